#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "matmod/array.hpp"
#include "matmod/submodule.hpp"

// Linear hypothesis testing.
//
// For a model submodule L and a hypothesis submodule L1 inside it, split
// the space into L1, L2 = L minus L1, and the residual complement. The
// residual scalar square S1 and the departure scalar square S2 are
// independent Wishart matrices; the roots of det(S2 - lambda S1) = 0 are
// the eigenvalues of S2 S1^{-1}, and under the hypothesis their joint law
// does not depend on the mean or the column covariance. That makes the
// classical root functionals (Wilks, Lawley-Hotelling, Pillai, Roy)
// calibratable by simulating one convenient null: zero mean, identity
// covariance.

namespace matmod {

class HypothesisSpec {
 public:
  // l1 must be contained in l: || P1 P - P1 ||_max <= 1e-8.
  HypothesisSpec(Submodule l, Submodule l1);

  const Submodule& model() const { return l_; }
  const Submodule& hypothesis() const { return l1_; }

 private:
  Submodule l_;
  Submodule l1_;
};

struct RootStats {
  double wilks_lambda;      // prod 1 / (1 + root)
  double lawley_hotelling;  // sum of roots
  double pillai;            // sum root / (1 + root)
  double roy_largest;       // largest root
};

RootStats root_functionals(const std::vector<double>& roots);

struct TestReport {
  Eigen::MatrixXd s1;  // residual scalar square
  Eigen::MatrixXd s2;  // hypothesis-departure scalar square
  std::vector<double> roots;  // descending, nonnegative
  RootStats stats;
  std::optional<RootStats> pvalues;  // filled by monte_carlo_pvalues
  int n = 0, m = 0, m1 = 0, m2 = 0, p = 0;
};

// Computes S1, S2 and the roots. Requires n - m >= p so that S1 is
// nondegenerate.
TestReport test_statistics(const Array& x, const HypothesisSpec& spec);

// Roots of det(s2 - lambda s1) = 0 for s1 positive-definite and s2
// symmetric nonnegative-definite, via Cholesky s1 = L L^T and the symmetric
// eigenproblem of L^{-1} s2 L^{-T}. Returned descending; roots in
// [-1e-9, 0) are clamped to zero, anything lower is a numerical error.
std::vector<double> generalized_eigen(const Eigen::MatrixXd& s2,
                                      const Eigen::MatrixXd& s1);

// Monte Carlo null calibration. Since the null law of the roots is free of
// the mean and covariance, the null is simulated with mean zero and
// identity covariance; stream r of `seed` drives replicate r, so tallies
// are independent of execution order. P-values use the finite-sample form
// (1 + #extreme) / (replicates + 1), where "extreme" is directional: at
// least as large for the root sums, at most as large for Wilks.
TestReport monte_carlo_pvalues(TestReport report, const HypothesisSpec& spec,
                               int replicates, std::uint64_t seed);

// Null samples of the four functionals for the given design, one per
// stream; used by calibration and the distribution-freeness checks.
std::vector<RootStats> null_root_samples(const HypothesisSpec& spec, int p,
                                         int replicates, std::uint64_t seed);

// Two-sample Kolmogorov-Smirnov distance and the large-sample critical
// value at level alpha.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
double ks_critical(double alpha, std::size_t n1, std::size_t n2);

}  // namespace matmod
