#include "matmod/random.hpp"

#include <string>
#include <utility>

#include "matmod/errors.hpp"
#include "matmod/wishart.hpp"

namespace matmod {

GaussianSpec::GaussianSpec(Array mean, Eigen::MatrixXd sigma,
                           std::uint64_t seed)
    : mean_(std::move(mean)), sigma_(std::move(sigma)), seed_(seed) {
  if (sigma_.rows() != mean_.p() || sigma_.cols() != mean_.p()) {
    throw ShapeError("GaussianSpec: sigma must be p x p");
  }
  if (!sigma_.allFinite()) {
    throw ArgumentError("GaussianSpec: non-finite sigma entry");
  }
  if (max_abs(sigma_ - sigma_.transpose()) >
      1e-10 * (1.0 + max_abs(sigma_))) {
    throw DefinitenessError("GaussianSpec: sigma is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma_);
  if (llt.info() != Eigen::Success) {
    throw DefinitenessError("GaussianSpec: sigma is not positive-definite");
  }
}

GaussianSampler::GaussianSampler(GaussianSpec spec)
    : spec_(std::move(spec)), sigma_root_(sqrt_spd(spec_.sigma())) {}

Array GaussianSampler::draw(std::uint64_t stream) const {
  RngStream rng(spec_.seed(), stream);
  const Eigen::MatrixXd z = standard_normal_matrix(spec_.p(), spec_.n(), rng);
  return Array(sigma_root_ * z + spec_.mean().matrix());
}

Array sample(const GaussianSpec& spec, std::uint64_t stream) {
  return GaussianSampler(spec).draw(stream);
}

Eigen::MatrixXd standard_normal_matrix(int p, int n, RngStream& rng) {
  Eigen::MatrixXd z(p, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < p; ++i) {
      z(i, j) = rng.normal();
    }
  }
  return z;
}

Eigen::MatrixXd random_orthogonal(int n, RngStream& rng) {
  const Eigen::MatrixXd g = standard_normal_matrix(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::VectorXd diag = qr.matrixQR().diagonal();
  for (int i = 0; i < n; ++i) {
    if (diag(i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

CovarianceArray::CovarianceArray(int p, int n) : p_(p), n_(n) {
  if (p < 1 || n < 1) {
    throw ShapeError("CovarianceArray: p >= 1 and n >= 1 required");
  }
  blocks_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                 Eigen::MatrixXd::Zero(p, p));
}

const Eigen::MatrixXd& CovarianceArray::block(int i, int j) const {
  return blocks_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(j)];
}

Eigen::MatrixXd& CovarianceArray::block(int i, int j) {
  return blocks_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(j)];
}

CovarianceArray iid_covariance(int n, const Eigen::MatrixXd& sigma) {
  CovarianceArray v(static_cast<int>(sigma.rows()), n);
  for (int i = 0; i < n; ++i) {
    v.block(i, i) = sigma;
  }
  return v;
}

CovarianceArray empirical_covariance_array(const std::vector<Array>& samples) {
  if (samples.size() < 2) {
    throw ArgumentError("empirical_covariance_array: need >= 2 samples");
  }
  const int p = samples.front().p();
  const int n = samples.front().n();
  for (const Array& s : samples) {
    if (s.p() != p || s.n() != n) {
      throw ShapeError("empirical_covariance_array: sample shapes differ");
    }
  }
  const double count = static_cast<double>(samples.size());
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(p, n);
  for (const Array& s : samples) {
    mean += s.matrix();
  }
  mean /= count;

  CovarianceArray v(p, n);
  for (const Array& s : samples) {
    const Eigen::MatrixXd centered = s.matrix() - mean;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        v.block(i, j) += centered.col(i) * centered.col(j).transpose();
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      v.block(i, j) /= count;
    }
  }
  return v;
}

CovarianceArray transform_covariance(const CovarianceArray& v,
                                     const Eigen::MatrixXd& q) {
  const int n = v.n();
  if (q.rows() != n || q.cols() != n) {
    throw ShapeError("transform_covariance: transform must be n x n");
  }
  if (!q.allFinite()) {
    throw ArgumentError("transform_covariance: non-finite transform");
  }
  // Two-pass congruence: tmp(k,j) = sum_l block(k,l) q(l,j), then
  // out(i,j) = sum_k q(k,i) tmp(k,j).
  CovarianceArray tmp(v.p(), n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(v.p(), v.p());
      for (int l = 0; l < n; ++l) {
        acc += v.block(k, l) * q(l, j);
      }
      tmp.block(k, j) = std::move(acc);
    }
  }
  CovarianceArray out(v.p(), n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(v.p(), v.p());
      for (int k = 0; k < n; ++k) {
        acc += tmp.block(k, j) * q(k, i);
      }
      out.block(i, j) = std::move(acc);
    }
  }
  return out;
}

}  // namespace matmod
