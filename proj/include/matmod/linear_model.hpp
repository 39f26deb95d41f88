#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matmod/array.hpp"
#include "matmod/submodule.hpp"

// Gaussian linear models: the expectation of an iid-column gaussian array
// is constrained to a submodule. Fitting projects the data onto that
// submodule; the projection together with the residual scalar square is a
// sufficient pair, the projection is the best unbiased estimate of the
// mean, and the residual scalar square divided by the residual dimension
// n - m is the unbiased estimate of the common column covariance.

namespace matmod {

struct ModelSpec {
  Submodule l;
  std::vector<std::string> labels;  // group or regressor names, optional
};

class ModelFit {
 public:
  ModelFit(Array m_hat, MatScalar residual_square,
           std::optional<Eigen::MatrixXd> sigma_hat, int n, int m);

  const Array& m_hat() const { return m_hat_; }
  const MatScalar& residual_square() const { return residual_square_; }

  // Unbiased covariance estimate residual_square / (n - m). Throws DfError
  // for a saturated model (n == m).
  const Eigen::MatrixXd& sigma_hat() const;
  bool saturated() const { return !sigma_hat_.has_value(); }

  int n() const { return n_; }
  int m() const { return m_; }
  int p() const { return m_hat_.p(); }

 private:
  Array m_hat_;
  MatScalar residual_square_;
  std::optional<Eigen::MatrixXd> sigma_hat_;
  int n_;
  int m_;
};

// m-sample shift model. Observations are ordered group-major: the columns
// of group j occupy one contiguous block, so the model submodule is spanned
// by the m block-indicator rows.
ModelSpec one_way_layout(const std::vector<int>& group_sizes);

// Model submodule generated by the rows of the design matrix; the model
// dimension is the design's rank, not its nominal row count. No intercept
// row is added implicitly.
ModelSpec regression_design(const Eigen::MatrixXd& x_design);

ModelFit fit(const Array& x, const ModelSpec& spec);

// Recovers the coefficient matrix A with A * x_design = m_hat. Requires
// full row rank; the fit itself is well defined without it, coefficients
// are not.
Eigen::MatrixXd regression_coefficients(const ModelFit& fit,
                                        const Eigen::MatrixXd& x_design);

}  // namespace matmod
