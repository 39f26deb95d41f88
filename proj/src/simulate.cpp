#include "matmod/simulate.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "matmod/errors.hpp"
#include "matmod/hypothesis.hpp"
#include "matmod/linear_model.hpp"
#include "matmod/random.hpp"
#include "matmod/wishart.hpp"
#include "parallel.hpp"

namespace matmod {

namespace {

// Auxiliary draws (orthogonal transforms and the like) use streams far from
// the replicate range so they never collide with streams 0 .. 2R.
constexpr std::uint64_t kAuxStream = 0xffff000000000000ull;

constexpr double kSeTolerance = 5.0;
constexpr double kKsLevel = 0.01;

struct Welford {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  // Standard error of the accumulated mean, floored to avoid 0/0.
  double se() const {
    const double var = m2 / static_cast<double>(count - 1);
    return std::max(std::sqrt(var / static_cast<double>(count)), 1e-15);
  }
};

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

// --- orthogonal-invariance -------------------------------------------------
// Columns iid N(0, sigma); after right multiplication by an orthogonal C the
// covariance grid must still be delta_ij sigma, both on the exact block
// grid and in the empirical covariance of the transformed samples.
ScenarioResult orthogonal_invariance(int replicates, std::uint64_t seed) {
  const int p = 2;
  const int n = 4;
  const Eigen::MatrixXd sigma = mat2(2.0, 0.5, 0.5, 1.0);

  RngStream aux(seed, kAuxStream);
  const OrthogonalTransform c(random_orthogonal(n, aux));

  const CovarianceArray iid = iid_covariance(n, sigma);
  const CovarianceArray alg = transform_covariance(iid, c.matrix());
  double algebraic_dev = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      algebraic_dev =
          std::max(algebraic_dev, max_abs(alg.block(i, j) - iid.block(i, j)));
    }
  }

  GaussianSampler sampler(GaussianSpec(Array::zero(p, n), sigma, seed));
  std::vector<Eigen::MatrixXd> transformed(
      static_cast<std::size_t>(replicates));
  detail::parallel_replicates(replicates, [&](int r) {
    transformed[static_cast<std::size_t>(r)] =
        sampler.draw(static_cast<std::uint64_t>(r)).matrix() * c.matrix();
  });

  std::vector<Array> samples;
  samples.reserve(transformed.size());
  for (const Eigen::MatrixXd& m : transformed) samples.emplace_back(m);
  const CovarianceArray emp = empirical_covariance_array(samples);

  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(p, n);
  for (const Eigen::MatrixXd& m : transformed) mean += m;
  mean /= static_cast<double>(replicates);

  // Per-entry spread of the centered products gives the standard error of
  // each empirical covariance entry.
  double max_se_dev = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) {
          Welford acc;
          for (const Eigen::MatrixXd& m : transformed) {
            acc.add((m(a, i) - mean(a, i)) * (m(b, j) - mean(b, j)));
          }
          const double truth = iid.block(i, j)(a, b);
          const double dev =
              std::abs(emp.block(i, j)(a, b) - truth) / acc.se();
          max_se_dev = std::max(max_se_dev, dev);
        }
      }
    }
  }

  ScenarioResult result;
  result.name = "orthogonal-invariance";
  result.observed = max_se_dev;
  result.tolerance = kSeTolerance;
  result.pass = max_se_dev <= kSeTolerance && algebraic_dev <= 1e-10;
  result.details = {{"max_se_deviation", max_se_dev},
                    {"algebraic_block_deviation", algebraic_dev},
                    {"replicates", static_cast<double>(replicates)}};
  return result;
}

// --- projection-independence ------------------------------------------------
// Projections of an iid gaussian array onto a submodule and its complement:
// entrywise cross-correlations vanish and each projection's mean is the
// projected mean.
ScenarioResult projection_independence(int replicates, std::uint64_t seed) {
  const int p = 2;
  const int n = 6;
  const Eigen::MatrixXd sigma = mat2(1.0, 0.3, 0.3, 2.0);
  Eigen::MatrixXd mean_matrix(p, n);
  for (int j = 0; j < n; ++j) {
    mean_matrix(0, j) = 0.3 + 0.1 * j;
    mean_matrix(1, j) = -0.2 + 0.05 * j;
  }

  const Submodule part =
      Submodule::from_rows(Eigen::MatrixXd::Ones(1, n));
  const Eigen::MatrixXd pi_1 = part.projector();
  const Eigen::MatrixXd pi_2 = part.complement().projector();

  GaussianSampler sampler(GaussianSpec(Array(mean_matrix), sigma, seed));
  const std::size_t entries = static_cast<std::size_t>(p) * n;
  std::vector<Eigen::MatrixXd> proj1(static_cast<std::size_t>(replicates));
  std::vector<Eigen::MatrixXd> proj2(static_cast<std::size_t>(replicates));
  detail::parallel_replicates(replicates, [&](int r) {
    const Eigen::MatrixXd x =
        sampler.draw(static_cast<std::uint64_t>(r)).matrix();
    proj1[static_cast<std::size_t>(r)] = x * pi_1;
    proj2[static_cast<std::size_t>(r)] = x * pi_2;
  });

  const double count = static_cast<double>(replicates);
  Eigen::MatrixXd mean1 = Eigen::MatrixXd::Zero(p, n);
  Eigen::MatrixXd mean2 = Eigen::MatrixXd::Zero(p, n);
  for (int r = 0; r < replicates; ++r) {
    mean1 += proj1[static_cast<std::size_t>(r)];
    mean2 += proj2[static_cast<std::size_t>(r)];
  }
  mean1 /= count;
  mean2 /= count;

  // Cross-covariances and entry variances in one pass over the stored
  // projections.
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(entries), static_cast<Eigen::Index>(entries));
  Eigen::VectorXd var1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(entries));
  Eigen::VectorXd var2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(entries));
  for (int r = 0; r < replicates; ++r) {
    const Eigen::MatrixXd c1 = proj1[static_cast<std::size_t>(r)] - mean1;
    const Eigen::MatrixXd c2 = proj2[static_cast<std::size_t>(r)] - mean2;
    const Eigen::Map<const Eigen::VectorXd> f1(c1.data(),
                                               static_cast<Eigen::Index>(entries));
    const Eigen::Map<const Eigen::VectorXd> f2(c2.data(),
                                               static_cast<Eigen::Index>(entries));
    cross += f1 * f2.transpose();
    var1 += f1.cwiseProduct(f1);
    var2 += f2.cwiseProduct(f2);
  }
  cross /= count;
  var1 /= count;
  var2 /= count;

  double max_corr_se = 0.0;
  for (Eigen::Index a = 0; a < cross.rows(); ++a) {
    for (Eigen::Index b = 0; b < cross.cols(); ++b) {
      const double denom = std::sqrt(var1(a) * var2(b));
      if (denom <= 0.0) continue;
      // se of a sample correlation under independence is 1/sqrt(R)
      const double corr = cross(a, b) / denom;
      max_corr_se = std::max(max_corr_se, std::abs(corr) * std::sqrt(count));
    }
  }

  const Eigen::MatrixXd true1 = mean_matrix * pi_1;
  const Eigen::MatrixXd true2 = mean_matrix * pi_2;
  double max_mean_se = 0.0;
  for (int a = 0; a < p; ++a) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Index e = a + static_cast<Eigen::Index>(j) * p;
      const double se1 = std::max(std::sqrt(var1(e) / count), 1e-15);
      const double se2 = std::max(std::sqrt(var2(e) / count), 1e-15);
      max_mean_se = std::max(max_mean_se,
                             std::abs(mean1(a, j) - true1(a, j)) / se1);
      max_mean_se = std::max(max_mean_se,
                             std::abs(mean2(a, j) - true2(a, j)) / se2);
    }
  }

  ScenarioResult result;
  result.name = "projection-independence";
  result.observed = std::max(max_corr_se, max_mean_se);
  result.tolerance = kSeTolerance;
  result.pass = result.observed <= kSeTolerance;
  result.details = {{"max_cross_correlation_se", max_corr_se},
                    {"max_projected_mean_se", max_mean_se},
                    {"replicates", static_cast<double>(replicates)}};
  return result;
}

// --- wishart-moments ---------------------------------------------------------
// Sample mean of central draws is df * sigma; the p = 1 case is the
// chi-square mean.
ScenarioResult wishart_moments(int replicates, std::uint64_t seed) {
  const Eigen::MatrixXd sigma = mat2(2.0, 0.5, 0.5, 1.0);
  const int df = 5;
  const WishartSpec spec(df, sigma);

  std::vector<Eigen::MatrixXd> draws(static_cast<std::size_t>(replicates));
  detail::parallel_replicates(replicates, [&](int r) {
    draws[static_cast<std::size_t>(r)] =
        sample_wishart(spec, seed, static_cast<std::uint64_t>(r));
  });
  double max_dev = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Welford acc;
      for (const Eigen::MatrixXd& w : draws) acc.add(w(a, b));
      max_dev = std::max(
          max_dev, std::abs(acc.mean - df * sigma(a, b)) / acc.se());
    }
  }

  const int chi_df = 3;
  const WishartSpec chi_spec(chi_df, Eigen::MatrixXd::Identity(1, 1));
  Welford chi;
  std::vector<double> chi_draws(static_cast<std::size_t>(replicates));
  detail::parallel_replicates(replicates, [&](int r) {
    chi_draws[static_cast<std::size_t>(r)] = sample_wishart(
        chi_spec, seed,
        static_cast<std::uint64_t>(replicates) + static_cast<std::uint64_t>(r))(
        0, 0);
  });
  for (double w : chi_draws) chi.add(w);
  const double chi_dev = std::abs(chi.mean - chi_df) / chi.se();

  ScenarioResult result;
  result.name = "wishart-moments";
  result.observed = std::max(max_dev, chi_dev);
  result.tolerance = kSeTolerance;
  result.pass = result.observed <= kSeTolerance;
  result.details = {{"max_mean_se_deviation", max_dev},
                    {"chi_square_mean_se_deviation", chi_dev},
                    {"replicates", static_cast<double>(replicates)}};
  return result;
}

// --- noncentrality-sufficiency ----------------------------------------------
// Two shift matrices with the same outer-product sum must produce the same
// noncentral law; compared by two-sample KS on traces.
ScenarioResult noncentrality_sufficiency(int replicates, std::uint64_t seed) {
  const Eigen::MatrixXd sigma = mat2(1.0, 0.2, 0.2, 1.5);
  const Eigen::MatrixXd delta = mat2(3.0, 1.0, 1.0, 2.0);
  const int df = 6;

  const Eigen::MatrixXd shift_a = noncentrality_realization(delta, df);
  RngStream aux(seed, kAuxStream + 1);
  const Eigen::MatrixXd shift_b = shift_a * random_orthogonal(df, aux);
  if (max_abs(shift_b * shift_b.transpose() - delta) > 1e-9) {
    throw NumericError(
        "noncentrality-sufficiency: rotated shift lost the noncentrality "
        "matrix");
  }

  std::vector<double> traces_a(static_cast<std::size_t>(replicates));
  std::vector<double> traces_b(static_cast<std::size_t>(replicates));
  detail::parallel_replicates(replicates, [&](int r) {
    traces_a[static_cast<std::size_t>(r)] =
        sample_wishart_shifted(df, sigma, shift_a, seed,
                               static_cast<std::uint64_t>(r))
            .trace();
    traces_b[static_cast<std::size_t>(r)] =
        sample_wishart_shifted(df, sigma, shift_b, seed,
                               static_cast<std::uint64_t>(replicates) +
                                   static_cast<std::uint64_t>(r))
            .trace();
  });

  const double d = ks_two_sample(traces_a, traces_b);
  const double crit = ks_critical(kKsLevel, traces_a.size(), traces_b.size());

  ScenarioResult result;
  result.name = "noncentrality-sufficiency";
  result.observed = d;
  result.tolerance = crit;
  result.pass = d <= crit;
  result.details = {{"ks_distance", d},
                    {"ks_critical_1pct", crit},
                    {"replicates", static_cast<double>(replicates)}};
  return result;
}

// --- distribution-freeness -----------------------------------------------------
// Null root functionals for a fixed design under two different (mean in L1,
// sigma) settings; their samples must agree by two-sample KS.
ScenarioResult distribution_freeness(int replicates, std::uint64_t seed) {
  const int p = 2;
  const std::vector<int> groups = {3, 3, 4};
  const int n = 10;
  const ModelSpec model = one_way_layout(groups);
  const Submodule l1 = Submodule::from_rows(Eigen::MatrixXd::Ones(1, n));
  const HypothesisSpec spec(model.l, l1);

  Eigen::VectorXd mean_a(p), mean_b(p);
  mean_a << 0.5, -0.25;
  mean_b << -1.2, 2.0;
  const Eigen::MatrixXd sigma_a = Eigen::MatrixXd::Identity(p, p);
  const Eigen::MatrixXd sigma_b = mat2(2.0, 0.7, 0.7, 1.0);

  const GaussianSampler sampler_a(
      GaussianSpec(Array(mean_a * Eigen::RowVectorXd::Ones(n)), sigma_a, seed));
  const GaussianSampler sampler_b(
      GaussianSpec(Array(mean_b * Eigen::RowVectorXd::Ones(n)), sigma_b, seed));

  std::vector<RootStats> stats_a(static_cast<std::size_t>(replicates));
  std::vector<RootStats> stats_b(static_cast<std::size_t>(replicates));
  detail::parallel_replicates(replicates, [&](int r) {
    stats_a[static_cast<std::size_t>(r)] =
        test_statistics(sampler_a.draw(static_cast<std::uint64_t>(r)), spec)
            .stats;
    stats_b[static_cast<std::size_t>(r)] =
        test_statistics(sampler_b.draw(static_cast<std::uint64_t>(replicates) +
                                       static_cast<std::uint64_t>(r)),
                        spec)
            .stats;
  });

  auto extract = [](const std::vector<RootStats>& v,
                    double RootStats::*field) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const RootStats& s : v) out.push_back(s.*field);
    return out;
  };

  const double crit = ks_critical(kKsLevel, stats_a.size(), stats_b.size());
  const std::vector<std::pair<std::string, double RootStats::*>> functionals =
      {{"wilks_lambda", &RootStats::wilks_lambda},
       {"lawley_hotelling", &RootStats::lawley_hotelling},
       {"pillai", &RootStats::pillai},
       {"roy_largest", &RootStats::roy_largest}};

  ScenarioResult result;
  result.name = "distribution-freeness";
  result.tolerance = crit;
  result.observed = 0.0;
  for (const auto& [label, field] : functionals) {
    const double d =
        ks_two_sample(extract(stats_a, field), extract(stats_b, field));
    result.observed = std::max(result.observed, d);
    result.details.emplace_back("ks_" + label, d);
  }
  result.details.emplace_back("ks_critical_1pct", crit);
  result.details.emplace_back("replicates", static_cast<double>(replicates));
  result.pass = result.observed <= crit;
  return result;
}

// --- sigma-unbiasedness ----------------------------------------------------
// Monte Carlo means of sigma_hat and m_hat against the generating sigma and
// mean.
ScenarioResult sigma_unbiasedness(int replicates, std::uint64_t seed) {
  const int p = 2;
  const std::vector<int> groups = {4, 3, 5};
  const int n = 12;
  const ModelSpec model = one_way_layout(groups);

  Eigen::MatrixXd mean_matrix(p, n);
  const double group_means[3][2] = {{0.0, 0.0}, {1.0, -1.0}, {-0.5, 2.0}};
  int col = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int k = 0; k < groups[g]; ++k, ++col) {
      mean_matrix(0, col) = group_means[g][0];
      mean_matrix(1, col) = group_means[g][1];
    }
  }
  const Eigen::MatrixXd sigma = mat2(1.5, 0.4, 0.4, 0.8);

  GaussianSampler sampler(GaussianSpec(Array(mean_matrix), sigma, seed));
  std::vector<Eigen::MatrixXd> sigma_hats(static_cast<std::size_t>(replicates));
  std::vector<Eigen::MatrixXd> m_hats(static_cast<std::size_t>(replicates));
  detail::parallel_replicates(replicates, [&](int r) {
    const ModelFit f =
        fit(sampler.draw(static_cast<std::uint64_t>(r)), model);
    sigma_hats[static_cast<std::size_t>(r)] = f.sigma_hat();
    m_hats[static_cast<std::size_t>(r)] = f.m_hat().matrix();
  });

  double sigma_dev = 0.0;
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      Welford acc;
      for (const Eigen::MatrixXd& s : sigma_hats) acc.add(s(a, b));
      sigma_dev =
          std::max(sigma_dev, std::abs(acc.mean - sigma(a, b)) / acc.se());
    }
  }
  double mean_dev = 0.0;
  for (int a = 0; a < p; ++a) {
    for (int j = 0; j < n; ++j) {
      Welford acc;
      for (const Eigen::MatrixXd& m : m_hats) acc.add(m(a, j));
      mean_dev = std::max(
          mean_dev, std::abs(acc.mean - mean_matrix(a, j)) / acc.se());
    }
  }

  ScenarioResult result;
  result.name = "sigma-unbiasedness";
  result.observed = std::max(sigma_dev, mean_dev);
  result.tolerance = kSeTolerance;
  result.pass = result.observed <= kSeTolerance;
  result.details = {{"max_sigma_hat_se_deviation", sigma_dev},
                    {"max_m_hat_se_deviation", mean_dev},
                    {"replicates", static_cast<double>(replicates)}};
  return result;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "orthogonal-invariance",  "projection-independence",
      "wishart-moments",        "noncentrality-sufficiency",
      "distribution-freeness",  "sigma-unbiasedness"};
  return names;
}

ScenarioResult run_scenario(const std::string& name, int replicates,
                            std::uint64_t seed) {
  if (replicates < 1000) {
    throw ArgumentError("run_scenario: replicates >= 1000 required");
  }
  if (name == "orthogonal-invariance")
    return orthogonal_invariance(replicates, seed);
  if (name == "projection-independence")
    return projection_independence(replicates, seed);
  if (name == "wishart-moments") return wishart_moments(replicates, seed);
  if (name == "noncentrality-sufficiency")
    return noncentrality_sufficiency(replicates, seed);
  if (name == "distribution-freeness")
    return distribution_freeness(replicates, seed);
  if (name == "sigma-unbiasedness")
    return sigma_unbiasedness(replicates, seed);
  throw ArgumentError("run_scenario: unknown scenario '" + name + "'");
}

}  // namespace matmod
