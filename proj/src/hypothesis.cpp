#include "matmod/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "matmod/errors.hpp"
#include "matmod/random.hpp"
#include "parallel.hpp"

namespace matmod {

namespace {

constexpr double kRootClamp = 1e-9;

std::string condition_estimate(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  const double largest = eig.eigenvalues().cwiseAbs().maxCoeff();
  const double smallest = eig.eigenvalues().minCoeff();
  if (smallest <= 0.0) return "inf (eigenvalue " + std::to_string(smallest) + ")";
  return std::to_string(largest / smallest);
}

}  // namespace

HypothesisSpec::HypothesisSpec(Submodule l, Submodule l1)
    : l_(std::move(l)), l1_(std::move(l1)) {
  if (l1_.ambient() != l_.ambient()) {
    throw ShapeError("HypothesisSpec: ambient dimensions differ");
  }
  if (!l_.contains(l1_, 1e-8)) {
    throw ArgumentError(
        "HypothesisSpec: hypothesis submodule is not contained in the model");
  }
}

RootStats root_functionals(const std::vector<double>& roots) {
  RootStats s{1.0, 0.0, 0.0, 0.0};
  for (double r : roots) {
    s.wilks_lambda *= 1.0 / (1.0 + r);
    s.lawley_hotelling += r;
    s.pillai += r / (1.0 + r);
  }
  s.roy_largest = roots.empty() ? 0.0 : roots.front();
  return s;
}

std::vector<double> generalized_eigen(const Eigen::MatrixXd& s2,
                                      const Eigen::MatrixXd& s1) {
  const Eigen::Index p = s1.rows();
  if (s1.cols() != p || s2.rows() != p || s2.cols() != p || p < 1) {
    throw ShapeError("generalized_eigen: matrices must be square, same size");
  }
  if (max_abs(s1 - s1.transpose()) > 1e-9 * (1.0 + max_abs(s1)) ||
      max_abs(s2 - s2.transpose()) > 1e-9 * (1.0 + max_abs(s2))) {
    throw DefinitenessError("generalized_eigen: inputs must be symmetric");
  }
  // det(s2 - lambda s1) with s2 = 0 has only the root 0, whatever s1 is.
  if (max_abs(s2) == 0.0) {
    return std::vector<double>(static_cast<std::size_t>(p), 0.0);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(s1);
  if (llt.info() != Eigen::Success) {
    throw SingularError(
        "generalized_eigen: s1 is not positive-definite (condition estimate " +
        condition_estimate(s1) + ")");
  }
  // Roots of det(s2 - lambda s1) = eigenvalues of L^{-1} s2 L^{-T}.
  const auto lower = llt.matrixL();
  const Eigen::MatrixXd reduced =
      lower.solve(Eigen::MatrixXd(lower.solve(s2).transpose()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (reduced + reduced.transpose()));
  std::vector<double> roots(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) {
    double lambda = eig.eigenvalues()(p - 1 - i);
    if (lambda < 0.0) {
      if (lambda < -kRootClamp) {
        throw NumericError("generalized_eigen: root " + std::to_string(lambda) +
                           " below -1e-9");
      }
      lambda = 0.0;
    }
    roots[static_cast<std::size_t>(i)] = lambda;
  }
  return roots;
}

TestReport test_statistics(const Array& x, const HypothesisSpec& spec) {
  const Submodule& l = spec.model();
  if (x.n() != l.ambient()) {
    throw ShapeError("test_statistics: array length does not match model");
  }
  const int n = x.n();
  const int p = x.p();
  const int m = l.dim();
  const int m1 = spec.hypothesis().dim();
  if (n - m < p) {
    throw DfError("test_statistics: n - m = " + std::to_string(n - m) +
                  " < p = " + std::to_string(p) +
                  ", residual scalar square would be degenerate");
  }
  const Submodule l2 = complement_within(spec.hypothesis(), l);
  if (l2.dim() != m - m1) {
    throw NumericError("test_statistics: departure dimension " +
                       std::to_string(l2.dim()) + " != m - m1");
  }
  TestReport report;
  report.s1 = scalar_square(project(x, l.complement())).entries();
  report.s2 = scalar_square(project(x, l2)).entries();
  // Data lying exactly in the hypothesis submodule leaves S2 at roundoff
  // scale (squared projection noise); snap it to zero so the roots are zero
  // rather than a 0/0 pencil.
  const double scale = max_abs(scalar_square(x).entries());
  if (max_abs(report.s2) <= 1e-24 * scale) {
    report.s2.setZero();
  }
  report.roots = generalized_eigen(report.s2, report.s1);
  report.stats = root_functionals(report.roots);
  report.n = n;
  report.m = m;
  report.m1 = m1;
  report.m2 = l2.dim();
  report.p = p;
  return report;
}

std::vector<RootStats> null_root_samples(const HypothesisSpec& spec, int p,
                                         int replicates, std::uint64_t seed) {
  const int n = spec.model().ambient();
  const int m = spec.model().dim();
  if (n - m < p) {
    throw DfError("null_root_samples: n - m < p");
  }
  const Eigen::MatrixXd pi_perp = spec.model().complement().projector();
  const Eigen::MatrixXd pi_2 =
      complement_within(spec.hypothesis(), spec.model()).projector();
  std::vector<RootStats> out(static_cast<std::size_t>(replicates));
  detail::parallel_replicates(replicates, [&](int r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const Eigen::MatrixXd z = standard_normal_matrix(p, n, rng);
    const Eigen::MatrixXd resid = z * pi_perp;
    const Eigen::MatrixXd depart = z * pi_2;
    const Eigen::MatrixXd s1 = resid * resid.transpose();
    const Eigen::MatrixXd s2 = depart * depart.transpose();
    out[static_cast<std::size_t>(r)] =
        root_functionals(generalized_eigen(s2, s1));
  });
  return out;
}

TestReport monte_carlo_pvalues(TestReport report, const HypothesisSpec& spec,
                               int replicates, std::uint64_t seed) {
  if (replicates < 1000) {
    throw ArgumentError("monte_carlo_pvalues: replicates >= 1000 required");
  }
  const std::vector<RootStats> null =
      null_root_samples(spec, report.p, replicates, seed);
  // Extremeness is directional: Wilks rejects low, the others reject high.
  int wilks = 0, lawley = 0, pillai = 0, roy = 0;
  for (const RootStats& s : null) {
    wilks += s.wilks_lambda <= report.stats.wilks_lambda;
    lawley += s.lawley_hotelling >= report.stats.lawley_hotelling;
    pillai += s.pillai >= report.stats.pillai;
    roy += s.roy_largest >= report.stats.roy_largest;
  }
  const double denom = static_cast<double>(replicates) + 1.0;
  report.pvalues = RootStats{(1.0 + wilks) / denom, (1.0 + lawley) / denom,
                             (1.0 + pillai) / denom, (1.0 + roy) / denom};
  return report;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw ArgumentError("ks_two_sample: empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(double alpha, std::size_t n1, std::size_t n2) {
  if (alpha <= 0.0 || alpha >= 1.0) {
    throw ArgumentError("ks_critical: alpha must lie in (0, 1)");
  }
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double n1d = static_cast<double>(n1);
  const double n2d = static_cast<double>(n2);
  return c * std::sqrt((n1d + n2d) / (n1d * n2d));
}

}  // namespace matmod
