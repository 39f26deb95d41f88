#include "matmod/linear_model.hpp"

#include <numeric>
#include <utility>

#include "matmod/errors.hpp"

namespace matmod {

ModelFit::ModelFit(Array m_hat, MatScalar residual_square,
                   std::optional<Eigen::MatrixXd> sigma_hat, int n, int m)
    : m_hat_(std::move(m_hat)),
      residual_square_(std::move(residual_square)),
      sigma_hat_(std::move(sigma_hat)),
      n_(n),
      m_(m) {}

const Eigen::MatrixXd& ModelFit::sigma_hat() const {
  if (!sigma_hat_) {
    throw DfError("sigma_hat: saturated model (n == m) leaves no residual "
                  "degrees of freedom");
  }
  return *sigma_hat_;
}

ModelSpec one_way_layout(const std::vector<int>& group_sizes) {
  if (group_sizes.empty()) {
    throw ArgumentError("one_way_layout: at least one group required");
  }
  for (int size : group_sizes) {
    if (size < 1) {
      throw ArgumentError("one_way_layout: every group must be non-empty");
    }
  }
  const int m = static_cast<int>(group_sizes.size());
  const int total = std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(m, total);
  int offset = 0;
  for (int j = 0; j < m; ++j) {
    rows.block(j, offset, 1, group_sizes[j]).setOnes();
    offset += group_sizes[j];
  }
  return ModelSpec{Submodule::from_rows(rows), {}};
}

ModelSpec regression_design(const Eigen::MatrixXd& x_design) {
  if (x_design.rows() < 1) {
    throw ArgumentError("regression_design: design has no rows");
  }
  if (x_design.cols() < 1) {
    throw ShapeError("regression_design: design has no columns");
  }
  if (!x_design.allFinite()) {
    throw ArgumentError("regression_design: non-finite design entry");
  }
  return ModelSpec{Submodule::from_rows(x_design), {}};
}

ModelFit fit(const Array& x, const ModelSpec& spec) {
  const int n = x.n();
  if (n != spec.l.ambient()) {
    throw ShapeError("fit: array length does not match model ambient");
  }
  const int m = spec.l.dim();
  Array m_hat = project(x, spec.l);
  MatScalar residual_square = scalar_square(x - m_hat);
  std::optional<Eigen::MatrixXd> sigma_hat;
  if (n > m) {
    sigma_hat = residual_square.entries() / static_cast<double>(n - m);
  }
  return ModelFit(std::move(m_hat), std::move(residual_square),
                  std::move(sigma_hat), n, m);
}

Eigen::MatrixXd regression_coefficients(const ModelFit& fit,
                                        const Eigen::MatrixXd& x_design) {
  const int m = static_cast<int>(x_design.rows());
  if (x_design.cols() != fit.n()) {
    throw ShapeError("regression_coefficients: design length does not match "
                     "fitted array");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x_design.transpose());
  if (qr.rank() < m) {
    throw NonUniqueError(
        "regression_coefficients: design rank " + std::to_string(qr.rank()) +
        " < " + std::to_string(m) + ", coefficients are not unique");
  }
  // A X = m_hat  <=>  X^T A^T = m_hat^T, least squares in the rank-deficient
  // residual directions (zero when m_hat lies in the design row space).
  const Eigen::MatrixXd at = qr.solve(fit.m_hat().matrix().transpose());
  return at.transpose();
}

}  // namespace matmod
