// matmod: fit multivariate linear models, test linear hypotheses with
// Monte Carlo calibrated root statistics, and run simulation checks.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csv.hpp"
#include "matmod/errors.hpp"
#include "matmod/hypothesis.hpp"
#include "matmod/linear_model.hpp"
#include "matmod/simulate.hpp"
#include "matmod/submodule.hpp"
#include "report.hpp"

namespace {

using matmod::cli::Dataset;
using matmod::cli::Report;

struct RunConfig {
  std::string input;
  std::uint64_t seed = 0;
  int replicates = 10000;
  double alpha = 0.05;
  std::string format = "json";
  std::string hypothesis;
};

void emit(const Report& report, const RunConfig& config) {
  std::cout << (config.format == "tsv" ? report.to_tsv() : report.to_json());
}

void require_valid(const RunConfig& config, bool needs_replicates) {
  if (config.alpha <= 0.0 || config.alpha >= 1.0) {
    throw matmod::ArgumentError("alpha must lie in (0, 1)");
  }
  if (needs_replicates && config.replicates < 1000) {
    throw matmod::ArgumentError("replicates must be at least 1000");
  }
}

// Model construction shared by fit and test. The design is taken from the
// data: group labels give a one-way layout, x columns give a regression
// design (no implicit intercept row; include a ones column if one is
// wanted), and plain y columns give the common-mean model.
matmod::ModelSpec build_model(const Dataset& ds, std::string& kind) {
  if (ds.grouped()) {
    kind = "one-way";
    matmod::ModelSpec spec = matmod::one_way_layout(ds.group_sizes);
    spec.labels = ds.group_names;
    return spec;
  }
  if (ds.has_regressors()) {
    kind = "regression";
    matmod::ModelSpec spec = matmod::regression_design(ds.regressors);
    spec.labels = ds.regressor_names;
    return spec;
  }
  kind = "mean";
  return matmod::ModelSpec{
      matmod::Submodule::from_rows(Eigen::MatrixXd::Ones(1, ds.n())), {}};
}

void put_dims(Report& report, std::initializer_list<std::pair<const char*, int>> dims) {
  Report& child = report.child("dims");
  for (const auto& [key, value] : dims) child.put(key, value);
}

int cmd_fit(const RunConfig& config) {
  require_valid(config, false);
  const Dataset ds = matmod::cli::parse_csv(config.input);
  std::string kind;
  const matmod::ModelSpec spec = build_model(ds, kind);
  const matmod::Array x(ds.values);
  const matmod::ModelFit fit = matmod::fit(x, spec);
  if (fit.saturated()) {
    throw matmod::DfError(
        "fit: saturated design (n == m) leaves no degrees of freedom for "
        "sigma_hat");
  }

  Report report;
  report.put("command", "fit");
  report.put("input", config.input);
  report.put("model", kind);
  put_dims(report, {{"n", fit.n()}, {"m", fit.m()}, {"p", fit.p()}});
  if (ds.grouped()) {
    report.put_strings("groups", ds.group_names);
    report.put_ints("group_sizes", ds.group_sizes);
    report.put_ints("permutation", ds.permutation);
    Report& means = report.child("group_means");
    int offset = 0;
    for (std::size_t g = 0; g < ds.group_names.size(); ++g) {
      const Eigen::MatrixXd column =
          fit.m_hat().matrix().col(offset);
      means.put_matrix(ds.group_names[g], column.transpose());
      offset += ds.group_sizes[g];
    }
  }
  if (ds.has_regressors()) {
    report.put_strings("regressors", ds.regressor_names);
    try {
      report.put_matrix("coefficients",
                        matmod::regression_coefficients(fit, ds.regressors));
    } catch (const matmod::NonUniqueError& e) {
      std::cerr << "note: " << e.what() << "\n";
    }
  }
  if (kind == "mean") {
    report.put_matrix("mean", fit.m_hat().matrix().col(0).transpose());
  }
  report.put_matrix("m_hat", fit.m_hat().matrix());
  report.put_matrix("sigma_hat", fit.sigma_hat());
  report.put_matrix("residual_square", fit.residual_square().entries());
  emit(report, config);
  return 0;
}

// Hypothesis submodule from the --hypothesis flag. Grouped data tests
// equality of group means, plain data tests zero mean, regression data
// tests a named sub-design.
matmod::Submodule build_hypothesis(const Dataset& ds, const RunConfig& config,
                                   std::string& label) {
  const int n = ds.n();
  if (ds.grouped()) {
    if (!config.hypothesis.empty() && config.hypothesis != "equal-means") {
      throw matmod::ArgumentError(
          "grouped data supports only --hypothesis equal-means");
    }
    label = "equal-means";
    return matmod::Submodule::from_rows(Eigen::MatrixXd::Ones(1, n));
  }
  if (ds.has_regressors()) {
    if (config.hypothesis.empty()) {
      throw matmod::ArgumentError(
          "regression data needs --hypothesis x<i>[,x<j>...] naming the "
          "sub-design");
    }
    label = config.hypothesis;
    std::vector<int> rows;
    std::stringstream ss(config.hypothesis);
    std::string token;
    while (std::getline(ss, token, ',')) {
      const auto it = std::find(ds.regressor_names.begin(),
                                ds.regressor_names.end(), token);
      if (it == ds.regressor_names.end()) {
        throw matmod::ArgumentError("unknown regressor '" + token +
                                    "' in --hypothesis");
      }
      rows.push_back(
          static_cast<int>(it - ds.regressor_names.begin()));
    }
    if (rows.size() >= static_cast<std::size_t>(ds.regressors.rows())) {
      throw matmod::ArgumentError(
          "--hypothesis must name a strict subset of the regressors");
    }
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      sub.row(static_cast<Eigen::Index>(i)) = ds.regressors.row(rows[i]);
    }
    return matmod::Submodule::from_rows(sub);
  }
  if (!config.hypothesis.empty() && config.hypothesis != "zero-mean") {
    throw matmod::ArgumentError(
        "ungrouped data supports only --hypothesis zero-mean");
  }
  label = "zero-mean";
  return matmod::Submodule::zero(n);
}

int cmd_test(const RunConfig& config) {
  require_valid(config, true);
  const Dataset ds = matmod::cli::parse_csv(config.input);
  std::string kind;
  const matmod::ModelSpec model = build_model(ds, kind);
  std::string hypothesis_label;
  const matmod::Submodule l1 = build_hypothesis(ds, config, hypothesis_label);
  const matmod::HypothesisSpec spec(model.l, l1);

  const matmod::Array x(ds.values);
  matmod::TestReport tr = matmod::test_statistics(x, spec);
  tr = matmod::monte_carlo_pvalues(tr, spec, config.replicates, config.seed);

  Report report;
  report.put("command", "test");
  report.put("input", config.input);
  report.put("model", kind);
  report.put("hypothesis", hypothesis_label);
  put_dims(report, {{"n", tr.n}, {"m", tr.m}, {"m1", tr.m1}, {"m2", tr.m2},
                    {"p", tr.p}});
  if (ds.grouped()) {
    report.put_strings("groups", ds.group_names);
    report.put_ints("permutation", ds.permutation);
  }
  report.put_matrix("s1", tr.s1);
  report.put_matrix("s2", tr.s2);
  report.put_doubles("roots", tr.roots);
  Report& stats = report.child("stats");
  stats.put("wilks_lambda", tr.stats.wilks_lambda);
  stats.put("lawley_hotelling", tr.stats.lawley_hotelling);
  stats.put("pillai", tr.stats.pillai);
  stats.put("roy_largest", tr.stats.roy_largest);
  Report& pvalues = report.child("pvalues");
  pvalues.put("wilks_lambda", tr.pvalues->wilks_lambda);
  pvalues.put("lawley_hotelling", tr.pvalues->lawley_hotelling);
  pvalues.put("pillai", tr.pvalues->pillai);
  pvalues.put("roy_largest", tr.pvalues->roy_largest);
  Report& reject = report.child("reject_at_alpha");
  reject.put("wilks_lambda", tr.pvalues->wilks_lambda <= config.alpha);
  reject.put("lawley_hotelling",
             tr.pvalues->lawley_hotelling <= config.alpha);
  reject.put("pillai", tr.pvalues->pillai <= config.alpha);
  reject.put("roy_largest", tr.pvalues->roy_largest <= config.alpha);
  report.put("alpha", config.alpha);
  report.put("replicates", config.replicates);
  report.put("seed", config.seed);
  emit(report, config);
  return 0;
}

int cmd_simulate(const std::string& scenario, const RunConfig& config) {
  require_valid(config, true);
  const matmod::ScenarioResult result =
      matmod::run_scenario(scenario, config.replicates, config.seed);

  Report report;
  report.put("command", "simulate");
  report.put("scenario", result.name);
  report.put("replicates", config.replicates);
  report.put("seed", config.seed);
  report.put("pass", result.pass);
  report.put("observed", result.observed);
  report.put("tolerance", result.tolerance);
  Report& details = report.child("details");
  for (const auto& [key, value] : result.details) details.put(key, value);
  emit(report, config);
  if (!result.pass) {
    std::cerr << "scenario '" << result.name << "' failed: observed "
              << matmod::cli::format_double(result.observed) << " vs tolerance "
              << matmod::cli::format_double(result.tolerance) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  std::string scenario;

  CLI::App app{"multivariate linear model analysis"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input) {
      cmd->add_option("--input", config.input, "input CSV path")->required();
    }
    cmd->add_option("--seed", config.seed, "random seed (64-bit)");
    cmd->add_option("--replicates", config.replicates,
                    "Monte Carlo replicates (>= 1000)");
    cmd->add_option("--alpha", config.alpha, "test level in (0, 1)");
    cmd->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"json", "tsv"}));
  };

  CLI::App* fit = app.add_subcommand("fit", "fit a linear model");
  add_common(fit, true);

  CLI::App* test = app.add_subcommand("test", "test a linear hypothesis");
  add_common(test, true);
  test->add_option("--hypothesis", config.hypothesis,
                   "equal-means | zero-mean | x<i>[,x<j>...]");

  CLI::App* simulate =
      app.add_subcommand("simulate", "run a Monte Carlo verification scenario");
  simulate->add_option("scenario", scenario, "scenario name")->required();
  add_common(simulate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit->parsed()) return cmd_fit(config);
    if (test->parsed()) return cmd_test(config);
    return cmd_simulate(scenario, config);
  } catch (const matmod::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const matmod::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const matmod::DfError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const matmod::NonUniqueError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const matmod::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
