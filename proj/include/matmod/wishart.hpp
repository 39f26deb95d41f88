#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "matmod/array.hpp"
#include "matmod/submodule.hpp"

// Wishart machinery.
//
// The scalar square of a projection of an iid gaussian array onto a
// submodule is Wishart distributed with degrees of freedom equal to the
// submodule dimension; projections onto pairwise orthogonal submodules
// that span the whole space are independent. Sampling here follows the
// definition directly -- a sum of outer products of gaussian columns --
// because the definition is the object under test downstream; no Bartlett
// shortcut. A noncentral draw adds fixed columns a_i whose outer-product
// sum is the noncentrality matrix; the law depends on those columns only
// through that sum.

namespace matmod {

// Symmetric nonnegative-definite square root via symmetric
// eigendecomposition: the unique symmetric Z >= 0 with Z^2 = s.
Eigen::MatrixXd sqrt_spd(const Eigen::MatrixXd& s);

class WishartSpec {
 public:
  WishartSpec(int df, Eigen::MatrixXd sigma);
  WishartSpec(int df, Eigen::MatrixXd sigma, Eigen::MatrixXd delta);

  int p() const { return static_cast<int>(sigma_.rows()); }
  int df() const { return df_; }
  const Eigen::MatrixXd& sigma() const { return sigma_; }
  const std::optional<Eigen::MatrixXd>& delta() const { return delta_; }

  // df < p draws are legitimately singular; callers that invert should warn.
  bool rank_deficient() const { return df_ < p(); }

 private:
  int df_;
  Eigen::MatrixXd sigma_;
  std::optional<Eigen::MatrixXd> delta_;
};

// One draw: sum over df outer products of N_p(0, sigma) columns, shifted by
// a realization of the noncentrality matrix when present. Pure in
// (spec, seed, stream).
Eigen::MatrixXd sample_wishart(const WishartSpec& spec, std::uint64_t seed,
                               std::uint64_t stream = 0);

// Definitional draw with an explicit shift-column matrix (p x df): the sum
// of (xi_i + shift_i)(xi_i + shift_i)^T. The distribution depends on the
// shift columns only through shift * shift^T.
Eigen::MatrixXd sample_wishart_shifted(int df, const Eigen::MatrixXd& sigma,
                                       const Eigen::MatrixXd& shift,
                                       std::uint64_t seed,
                                       std::uint64_t stream = 0);

// p x df matrix A with A A^T = delta: sqrt(lambda_i) v_i eigencolumns,
// zero-padded. Requires rank(delta) <= df.
Eigen::MatrixXd noncentrality_realization(const Eigen::MatrixXd& delta,
                                          int df);

struct DecompositionReport {
  std::vector<Array> projections;
  std::vector<MatScalar> squares;  // scalar square of each projection
  std::vector<int> dims;
  std::vector<Eigen::MatrixXd> deltas;  // present when a mean was supplied
};

// Splits x into projections onto pairwise orthogonal submodules spanning
// the full space (cross-projector products at most 1e-8, dims summing to n).
DecompositionReport decompose(const Array& x,
                              const std::vector<Submodule>& parts);
DecompositionReport decompose(const Array& x,
                              const std::vector<Submodule>& parts,
                              const Array& mean);

}  // namespace matmod
