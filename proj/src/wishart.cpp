#include "matmod/wishart.hpp"

#include <string>
#include <utility>

#include "matmod/errors.hpp"
#include "matmod/random.hpp"
#include "matmod/rng.hpp"

namespace matmod {

namespace {

void require_symmetric(const Eigen::MatrixXd& s, double tol,
                       const char* what) {
  if (s.rows() != s.cols() || s.rows() < 1) {
    throw ShapeError(std::string(what) + ": matrix must be square");
  }
  if (!s.allFinite()) {
    throw ArgumentError(std::string(what) + ": non-finite entry");
  }
  if (max_abs(s - s.transpose()) > tol * (1.0 + max_abs(s))) {
    throw DefinitenessError(std::string(what) + ": matrix is not symmetric");
  }
}

}  // namespace

Eigen::MatrixXd sqrt_spd(const Eigen::MatrixXd& s) {
  require_symmetric(s, 1e-9, "sqrt_spd");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (s + s.transpose()));
  Eigen::VectorXd values = eig.eigenvalues();
  const double floor = -1e-9 * (1.0 + max_abs(s));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < floor) {
      throw DefinitenessError("sqrt_spd: matrix is not nonnegative-definite "
                              "(eigenvalue " +
                              std::to_string(values(i)) + ")");
    }
    values(i) = std::sqrt(std::max(values(i), 0.0));
  }
  return eig.eigenvectors() * values.asDiagonal() *
         eig.eigenvectors().transpose();
}

WishartSpec::WishartSpec(int df, Eigen::MatrixXd sigma)
    : df_(df), sigma_(std::move(sigma)) {
  if (df_ < 1) throw ArgumentError("WishartSpec: df >= 1 required");
  require_symmetric(sigma_, 1e-10, "WishartSpec sigma");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma_);
  if (llt.info() != Eigen::Success) {
    throw DefinitenessError("WishartSpec: sigma is not positive-definite");
  }
}

WishartSpec::WishartSpec(int df, Eigen::MatrixXd sigma, Eigen::MatrixXd delta)
    : WishartSpec(df, std::move(sigma)) {
  require_symmetric(delta, 1e-9, "WishartSpec delta");
  if (delta.rows() != sigma_.rows()) {
    throw ShapeError("WishartSpec: delta must be p x p");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(delta);
  if (eig.eigenvalues().minCoeff() < -1e-9 * (1.0 + max_abs(delta))) {
    throw DefinitenessError(
        "WishartSpec: delta is not nonnegative-definite");
  }
  delta_ = std::move(delta);
}

Eigen::MatrixXd noncentrality_realization(const Eigen::MatrixXd& delta,
                                          int df) {
  require_symmetric(delta, 1e-9, "noncentrality_realization");
  const int p = static_cast<int>(delta.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(delta);
  const double cutoff = 1e-12 * (1.0 + eig.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, df);
  int used = 0;
  // Eigenvalues ascend; take the significant ones from the top.
  for (Eigen::Index i = eig.eigenvalues().size() - 1; i >= 0; --i) {
    const double lambda = eig.eigenvalues()(i);
    if (lambda <= cutoff) break;
    if (used >= df) {
      throw ArgumentError(
          "noncentrality_realization: rank of delta exceeds df");
    }
    a.col(used++) = std::sqrt(lambda) * eig.eigenvectors().col(i);
  }
  return a;
}

Eigen::MatrixXd sample_wishart_shifted(int df, const Eigen::MatrixXd& sigma,
                                       const Eigen::MatrixXd& shift,
                                       std::uint64_t seed,
                                       std::uint64_t stream) {
  const int p = static_cast<int>(sigma.rows());
  if (shift.size() > 0 && (shift.rows() != p || shift.cols() != df)) {
    throw ShapeError("sample_wishart_shifted: shift must be p x df");
  }
  RngStream rng(seed, stream);
  const Eigen::MatrixXd root = sqrt_spd(sigma);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd z(p);
  for (int k = 0; k < df; ++k) {
    for (int i = 0; i < p; ++i) {
      z(i) = rng.normal();
    }
    Eigen::VectorXd xi = root * z;
    if (shift.size() > 0) {
      xi += shift.col(k);
    }
    w += xi * xi.transpose();
  }
  return w;
}

Eigen::MatrixXd sample_wishart(const WishartSpec& spec, std::uint64_t seed,
                               std::uint64_t stream) {
  Eigen::MatrixXd shift;
  if (spec.delta()) {
    shift = noncentrality_realization(*spec.delta(), spec.df());
  }
  return sample_wishart_shifted(spec.df(), spec.sigma(), shift, seed, stream);
}

namespace {

DecompositionReport decompose_impl(const Array& x,
                                   const std::vector<Submodule>& parts,
                                   const Array* mean) {
  if (parts.empty()) {
    throw DecompositionError("decompose: no parts given");
  }
  const int n = x.n();
  int total = 0;
  for (const Submodule& part : parts) {
    if (part.ambient() != n) {
      throw ShapeError("decompose: part ambient does not match array");
    }
    total += part.dim();
  }
  if (total != n) {
    throw DecompositionError("decompose: part dimensions sum to " +
                             std::to_string(total) + ", expected " +
                             std::to_string(n));
  }
  std::vector<Eigen::MatrixXd> projectors;
  projectors.reserve(parts.size());
  for (const Submodule& part : parts) {
    projectors.push_back(part.projector());
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (max_abs(projectors[i] * projectors[j]) > 1e-8) {
        throw DecompositionError("decompose: parts " + std::to_string(i) +
                                 " and " + std::to_string(j) +
                                 " are not orthogonal");
      }
    }
  }
  if (mean != nullptr && (mean->p() != x.p() || mean->n() != n)) {
    throw ShapeError("decompose: mean shape does not match array");
  }

  DecompositionReport report;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Array proj(x.matrix() * projectors[i]);
    report.squares.push_back(scalar_square(proj));
    report.projections.push_back(std::move(proj));
    report.dims.push_back(parts[i].dim());
    if (mean != nullptr) {
      const Array mean_proj(mean->matrix() * projectors[i]);
      report.deltas.push_back(scalar_square(mean_proj).entries());
    }
  }
  return report;
}

}  // namespace

DecompositionReport decompose(const Array& x,
                              const std::vector<Submodule>& parts) {
  return decompose_impl(x, parts, nullptr);
}

DecompositionReport decompose(const Array& x,
                              const std::vector<Submodule>& parts,
                              const Array& mean) {
  return decompose_impl(x, parts, &mean);
}

}  // namespace matmod
