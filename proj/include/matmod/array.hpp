#pragma once

#include <Eigen/Dense>

#include "matmod/errors.hpp"

// Arrays of p-columns and their matrix-valued inner product.
//
// An Array is an ordered row of n column vectors of dimension p, stored as
// the p x n matrix whose i-th column is the i-th element. The element view
// is an access convention only; every operation below is matrix algebra on
// that stored form. Square p x p matrices play the role of scalars: they
// multiply arrays from the left, and the inner product of two arrays is a
// p x p matrix rather than a number. The inner product of arrays X and Y is
//
//   <X, Y> = sum_i X_i Y_i^T,
//
// which equals the matrix product of their stored forms. It is bilinear
// over the matrix scalars but not commutative: <Y, X> = <X, Y>^T. The
// scalar square <X, X> is symmetric nonnegative-definite and vanishes only
// for the zero array, so orthogonality (<X, Y> = 0) and the Pythagorean
// identity behave as in a euclidean space.

namespace matmod {

// p x p matrix produced by the generalized scalar product of two arrays.
class MatScalar {
 public:
  explicit MatScalar(Eigen::MatrixXd entries);

  int p() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  // Exact symmetry never survives floating point; both checks are relative
  // to the magnitude of the entries.
  bool is_symmetric(double tol) const;
  double min_eigenvalue() const;

 private:
  Eigen::MatrixXd entries_;
};

// Ordered row of n p-columns, stored as its p x n matrix form.
class Array {
 public:
  explicit Array(Eigen::MatrixXd columns);

  static Array zero(int p, int n);

  int p() const { return static_cast<int>(matrix_.rows()); }
  int n() const { return static_cast<int>(matrix_.cols()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  // Element view: the i-th p-column, 0-based.
  Eigen::VectorXd element(int i) const { return matrix_.col(i); }

 private:
  Eigen::MatrixXd matrix_;
};

// Right-multiplication matrix checked to be orthogonal (Q Q^T = I to
// 1e-10). Plain right_mul never verifies orthogonality; callers that need
// a product-preserving transform construct one of these.
class OrthogonalTransform {
 public:
  explicit OrthogonalTransform(Eigen::MatrixXd q);
  const Eigen::MatrixXd& matrix() const { return q_; }
  int n() const { return static_cast<int>(q_.rows()); }

 private:
  Eigen::MatrixXd q_;
};

Array add(const Array& a, const Array& b);
Array subtract(const Array& a, const Array& b);

// Element-wise left multiplication by a p x p matrix scalar.
Array left_mul(const Eigen::MatrixXd& k, const Array& t);

// Linear transformation of the index space: the stored form times Q.
Array right_mul(const Array& t, const Eigen::MatrixXd& q);
Array right_mul(const Array& t, const OrthogonalTransform& q);

MatScalar scalar_product(const Array& a, const Array& b);
MatScalar scalar_square(const Array& t);

// True iff every entry of <a, b> is at most tol in magnitude. Reciprocal
// in a and b since <b, a> is the transpose.
bool is_orthogonal(const Array& a, const Array& b, double tol);

inline Array operator+(const Array& a, const Array& b) { return add(a, b); }
inline Array operator-(const Array& a, const Array& b) {
  return subtract(a, b);
}

// Largest entry magnitude; zero for empty matrices.
double max_abs(const Eigen::MatrixXd& m);

}  // namespace matmod
