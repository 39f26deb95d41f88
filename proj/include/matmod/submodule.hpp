#pragma once

#include <Eigen/Dense>

#include "matmod/array.hpp"
#include "matmod/errors.hpp"

// Submodules of array space.
//
// A set of p x n arrays closed under addition and left multiplication by
// p x p matrices is generated by a subspace L of the n-row space: its
// members are exactly the arrays whose rows lie in L, and its dimension
// equals dim L. A Submodule therefore stores an orthonormal row basis of L.
// Projection of an array onto the submodule is right multiplication by the
// row-space projector B^T B, which is simultaneously the euclidean
// projection of every row and the unique nearest point of the submodule in
// the nonnegative-definite ordering of residual scalar squares.

namespace matmod {

class Submodule {
 public:
  // Builds the submodule generated by the given n-rows (one row per input
  // row; the list may be linearly dependent). Rank detection and basis
  // choice: modified Gram-Schmidt over the rows, pivoting on the largest
  // residual norm (ties to the lowest index), rank cutoff at
  // 1e-10 * (largest input row norm). Deterministic given input order.
  static Submodule from_rows(const Eigen::MatrixXd& rows);

  static Submodule full(int n);
  static Submodule zero(int n);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.rows()); }

  // r x n matrix with orthonormal rows generating the submodule.
  const Eigen::MatrixXd& basis() const { return basis_; }

  // n x n row-space projector B^T B; symmetric, idempotent, rank = dim().
  Eigen::MatrixXd projector() const;

  // Orthogonal complement within the full row space.
  Submodule complement() const;

  // Bases are not unique; submodule comparisons go through projectors.
  bool contains(const Submodule& other, double tol = 1e-8) const;
  bool spans_same(const Submodule& other, double tol = 1e-8) const;

 private:
  Submodule(Eigen::MatrixXd basis, int n);

  Eigen::MatrixXd basis_;  // r x n, orthonormal rows
  int n_;

  friend Submodule orthonormal_rows(const Eigen::MatrixXd& rows, double scale,
                                    int n);
};

// Coordinates of a p x n matrix relative to a generating row basis: the
// p-columns A with X = A E.
class Coordinates {
 public:
  explicit Coordinates(Eigen::MatrixXd alphas);

  int p() const { return static_cast<int>(alphas_.rows()); }
  int count() const { return static_cast<int>(alphas_.cols()); }
  Eigen::VectorXd alpha(int i) const { return alphas_.col(i); }
  const Eigen::MatrixXd& matrix() const { return alphas_; }

 private:
  Eigen::MatrixXd alphas_;  // p x n
};

// Unique A with x = A E. Solves by column-pivoted QR, never by explicit
// inverse; rejects bases whose estimated condition number exceeds 1e12.
Coordinates coordinates(const Array& x, const Eigen::MatrixXd& e_basis);

// Coordinates of the same matrix relative to f_basis: B = A E F^{-1}.
Coordinates change_basis(const Coordinates& c, const Eigen::MatrixXd& e_basis,
                         const Eigen::MatrixXd& f_basis);

// Nearest point of the submodule: x right-multiplied by the projector.
Array project(const Array& x, const Submodule& l);

// Orthogonal complement of inner within outer (inner must be contained in
// outer); dimensions add up to dim(outer).
Submodule complement_within(const Submodule& inner, const Submodule& outer);

}  // namespace matmod
