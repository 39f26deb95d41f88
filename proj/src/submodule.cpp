#include "matmod/submodule.hpp"

#include <string>
#include <utility>
#include <vector>

namespace matmod {

namespace {

constexpr double kRankCutoffFactor = 1e-10;
constexpr double kMaxBasisCondition = 1e12;

// Condition estimate from the diagonal of a column-pivoted QR factor.
void require_well_conditioned(
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr, const char* what) {
  const auto diag = qr.matrixR().diagonal().cwiseAbs();
  const double largest = diag(0);
  const double smallest = diag(diag.size() - 1);
  if (smallest <= 0.0 || largest / smallest > kMaxBasisCondition) {
    throw SingularError(std::string(what) +
                        ": basis is singular or ill-conditioned (condition "
                        "estimate " +
                        (smallest <= 0.0 ? std::string("inf")
                                         : std::to_string(largest / smallest)) +
                        ")");
  }
}

// Column-pivoted QR solve of M Z = RHS, rejecting ill-conditioned M.
Eigen::MatrixXd solve_checked(const Eigen::MatrixXd& m,
                              const Eigen::MatrixXd& rhs, const char* what) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  require_well_conditioned(qr, what);
  return qr.solve(rhs);
}

void require_square_basis(const Eigen::MatrixXd& e, int n, const char* what) {
  if (e.rows() != n || e.cols() != n) {
    throw ShapeError(std::string(what) + ": basis must be n x n");
  }
  if (!e.allFinite()) {
    throw ArgumentError(std::string(what) + ": non-finite basis entry");
  }
}

}  // namespace

// Modified Gram-Schmidt with row pivoting. `scale` sets the rank cutoff;
// from_rows passes the largest input row norm, projector-derived callers
// pass 1 (projector rows live on that scale).
Submodule orthonormal_rows(const Eigen::MatrixXd& rows, double scale, int n) {
  const double cutoff = kRankCutoffFactor * scale;
  const int k = static_cast<int>(rows.rows());
  Eigen::MatrixXd work = rows;
  Eigen::MatrixXd basis(std::min(k, n), n);
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  int r = 0;
  while (r < n) {
    int pivot = -1;
    double best = cutoff;
    for (int i = 0; i < k; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double norm = work.row(i).norm();
      if (norm > best) {
        best = norm;
        pivot = i;
      }
    }
    if (pivot < 0) break;
    used[static_cast<std::size_t>(pivot)] = true;
    Eigen::RowVectorXd q = work.row(pivot);
    // One re-orthogonalization pass keeps the basis orthonormal well below
    // the 1e-10 Gram tolerance.
    for (int j = 0; j < r; ++j) {
      q -= (q * basis.row(j).transpose())(0, 0) * basis.row(j);
    }
    q /= q.norm();
    basis.row(r) = q;
    ++r;
    for (int i = 0; i < k; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      work.row(i) -= (work.row(i) * q.transpose())(0, 0) * q;
    }
  }
  return Submodule(basis.topRows(r), n);
}

Submodule::Submodule(Eigen::MatrixXd basis, int n)
    : basis_(std::move(basis)), n_(n) {}

Submodule Submodule::from_rows(const Eigen::MatrixXd& rows) {
  const int n = static_cast<int>(rows.cols());
  if (n < 1) {
    throw ShapeError("from_rows: ambient row length must be >= 1");
  }
  if (!rows.allFinite()) {
    throw ArgumentError("from_rows: non-finite row entry");
  }
  double scale = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    scale = std::max(scale, rows.row(i).norm());
  }
  return orthonormal_rows(rows, scale, n);
}

Submodule Submodule::full(int n) {
  if (n < 1) throw ShapeError("full: n >= 1 required");
  return Submodule(Eigen::MatrixXd::Identity(n, n), n);
}

Submodule Submodule::zero(int n) {
  if (n < 1) throw ShapeError("zero: n >= 1 required");
  return Submodule(Eigen::MatrixXd(0, n), n);
}

Eigen::MatrixXd Submodule::projector() const {
  if (dim() == 0) return Eigen::MatrixXd::Zero(n_, n_);
  return basis_.transpose() * basis_;
}

Submodule Submodule::complement() const {
  const Eigen::MatrixXd residual =
      Eigen::MatrixXd::Identity(n_, n_) - projector();
  return orthonormal_rows(residual, 1.0, n_);
}

bool Submodule::contains(const Submodule& other, double tol) const {
  if (other.ambient() != n_) return false;
  const Eigen::MatrixXd pi_other = other.projector();
  return max_abs(pi_other * projector() - pi_other) <= tol;
}

bool Submodule::spans_same(const Submodule& other, double tol) const {
  if (other.ambient() != n_) return false;
  return max_abs(projector() - other.projector()) <= tol;
}

Coordinates::Coordinates(Eigen::MatrixXd alphas) : alphas_(std::move(alphas)) {
  if (alphas_.rows() < 1 || alphas_.cols() < 1) {
    throw ShapeError("Coordinates: p >= 1 and at least one column required");
  }
  if (!alphas_.allFinite()) {
    throw ArgumentError("Coordinates: non-finite entry");
  }
}

Coordinates coordinates(const Array& x, const Eigen::MatrixXd& e_basis) {
  require_square_basis(e_basis, x.n(), "coordinates");
  // A E = X  <=>  E^T A^T = X^T
  const Eigen::MatrixXd at = solve_checked(
      e_basis.transpose(), x.matrix().transpose(), "coordinates");
  return Coordinates(at.transpose());
}

Coordinates change_basis(const Coordinates& c, const Eigen::MatrixXd& e_basis,
                         const Eigen::MatrixXd& f_basis) {
  const int n = c.count();
  require_square_basis(e_basis, n, "change_basis");
  require_square_basis(f_basis, n, "change_basis");
  // Both bases must be invertible even though only F gets solved against.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_e(e_basis);
  require_well_conditioned(qr_e, "change_basis");
  // B = A E F^{-1}  <=>  F^T B^T = (A E)^T
  const Eigen::MatrixXd ae_t = e_basis.transpose() * c.matrix().transpose();
  const Eigen::MatrixXd bt =
      solve_checked(f_basis.transpose(), ae_t, "change_basis");
  return Coordinates(bt.transpose());
}

Array project(const Array& x, const Submodule& l) {
  if (x.n() != l.ambient()) {
    throw ShapeError("project: array length " + std::to_string(x.n()) +
                     " does not match ambient " + std::to_string(l.ambient()));
  }
  return Array(x.matrix() * l.projector());
}

Submodule complement_within(const Submodule& inner, const Submodule& outer) {
  if (inner.ambient() != outer.ambient()) {
    throw ShapeError("complement_within: ambient dimensions differ");
  }
  if (!outer.contains(inner)) {
    throw ArgumentError("complement_within: inner is not contained in outer");
  }
  // P - P_inner is itself a projector when the containment holds.
  return orthonormal_rows(outer.projector() - inner.projector(), 1.0,
                          outer.ambient());
}

}  // namespace matmod
