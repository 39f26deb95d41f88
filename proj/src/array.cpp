#include "matmod/array.hpp"

#include <utility>

namespace matmod {

namespace {

void require_same_shape(const Array& a, const Array& b, const char* op) {
  if (a.p() != b.p() || a.n() != b.n()) {
    throw ShapeError(std::string(op) + ": array shapes differ (" +
                     std::to_string(a.p()) + "x" + std::to_string(a.n()) +
                     " vs " + std::to_string(b.p()) + "x" +
                     std::to_string(b.n()) + ")");
  }
}

}  // namespace

double max_abs(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

MatScalar::MatScalar(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw ShapeError("MatScalar: entries must be square and non-empty");
  }
  if (!entries_.allFinite()) {
    throw ArgumentError("MatScalar: non-finite entry");
  }
}

bool MatScalar::is_symmetric(double tol) const {
  const double scale = tol * (1.0 + max_abs(entries_));
  return max_abs(entries_ - entries_.transpose()) <= scale;
}

double MatScalar::min_eigenvalue() const {
  const Eigen::MatrixXd sym = 0.5 * (entries_ + entries_.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  return eig.eigenvalues().minCoeff();
}

Array::Array(Eigen::MatrixXd columns) : matrix_(std::move(columns)) {
  if (matrix_.rows() < 1 || matrix_.cols() < 1) {
    throw ShapeError("Array: p >= 1 and n >= 1 required");
  }
  if (!matrix_.allFinite()) {
    throw ArgumentError("Array: non-finite entry");
  }
}

Array Array::zero(int p, int n) {
  return Array(Eigen::MatrixXd::Zero(p, n));
}

OrthogonalTransform::OrthogonalTransform(Eigen::MatrixXd q) : q_(std::move(q)) {
  if (q_.rows() < 1 || q_.rows() != q_.cols()) {
    throw ShapeError("OrthogonalTransform: matrix must be square");
  }
  const Eigen::MatrixXd gram = q_ * q_.transpose();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(q_.rows(), q_.rows());
  if (max_abs(gram - id) > 1e-10) {
    throw ArgumentError("OrthogonalTransform: Q Q^T differs from I beyond 1e-10");
  }
}

Array add(const Array& a, const Array& b) {
  require_same_shape(a, b, "add");
  return Array(a.matrix() + b.matrix());
}

Array subtract(const Array& a, const Array& b) {
  require_same_shape(a, b, "subtract");
  return Array(a.matrix() - b.matrix());
}

Array left_mul(const Eigen::MatrixXd& k, const Array& t) {
  if (k.rows() != t.p() || k.cols() != t.p()) {
    throw ShapeError("left_mul: scalar matrix must be p x p");
  }
  if (!k.allFinite()) {
    throw ArgumentError("left_mul: non-finite scalar matrix");
  }
  return Array(k * t.matrix());
}

Array right_mul(const Array& t, const Eigen::MatrixXd& q) {
  if (q.rows() != t.n() || q.cols() != t.n()) {
    throw ShapeError("right_mul: transform must be n x n");
  }
  if (!q.allFinite()) {
    throw ArgumentError("right_mul: non-finite transform");
  }
  return Array(t.matrix() * q);
}

Array right_mul(const Array& t, const OrthogonalTransform& q) {
  return right_mul(t, q.matrix());
}

MatScalar scalar_product(const Array& a, const Array& b) {
  require_same_shape(a, b, "scalar_product");
  return MatScalar(a.matrix() * b.matrix().transpose());
}

MatScalar scalar_square(const Array& t) {
  return MatScalar(t.matrix() * t.matrix().transpose());
}

bool is_orthogonal(const Array& a, const Array& b, double tol) {
  if (tol < 0.0) {
    throw ArgumentError("is_orthogonal: tolerance must be nonnegative");
  }
  return max_abs(scalar_product(a, b).entries()) <= tol;
}

}  // namespace matmod
