#pragma once

#include <Eigen/Dense>

#include "matmod/array.hpp"
#include "matmod/random.hpp"
#include "matmod/rng.hpp"
#include "matmod/submodule.hpp"

// Shared generators and oracles for the test suites. Oracles stay naive on
// purpose: they must not share a code path with the implementation they
// check.

namespace test_support {

inline Eigen::MatrixXd random_matrix(int rows, int cols,
                                     matmod::RngStream& rng) {
  return matmod::standard_normal_matrix(rows, cols, rng);
}

inline matmod::Array random_array(int p, int n, matmod::RngStream& rng) {
  return matmod::Array(random_matrix(p, n, rng));
}

inline Eigen::MatrixXd random_spd(int p, matmod::RngStream& rng) {
  const Eigen::MatrixXd g = random_matrix(p, p, rng);
  return g * g.transpose() / static_cast<double>(p) +
         0.5 * Eigen::MatrixXd::Identity(p, p);
}

inline matmod::Submodule random_submodule(int n, int r,
                                          matmod::RngStream& rng) {
  return matmod::Submodule::from_rows(random_matrix(r, n, rng));
}

// Deviation relative to the operand scale; 1 is a neutral floor so small
// matrices are compared absolutely.
inline double rel_dev(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return matmod::max_abs(a - b) /
         std::max({1.0, matmod::max_abs(a), matmod::max_abs(b)});
}

// Triple-loop matrix product, the matrix-form oracle.
inline Eigen::MatrixXd naive_product(const Eigen::MatrixXd& a,
                                     const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < b.cols(); ++k) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        out(i, k) += a(i, j) * b(j, k);
      }
    }
  }
  return out;
}

// Element-wise sum of outer products, the definition of the scalar product.
inline Eigen::MatrixXd naive_scalar_product(const matmod::Array& a,
                                            const matmod::Array& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.p(), a.p());
  for (int i = 0; i < a.n(); ++i) {
    out += a.element(i) * b.element(i).transpose();
  }
  return out;
}

// Euclidean projection of a row onto the span of raw generator rows via
// normal equations, independent of the projector route.
inline Eigen::RowVectorXd row_projection_oracle(const Eigen::RowVectorXd& v,
                                                const Eigen::MatrixXd& rows) {
  const Eigen::MatrixXd gram = rows * rows.transpose();
  const Eigen::VectorXd rhs = rows * v.transpose();
  const Eigen::VectorXd coef = gram.ldlt().solve(rhs);
  return (rows.transpose() * coef).transpose();
}

}  // namespace test_support
