#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "matmod/array.hpp"
#include "matmod/rng.hpp"

// Random arrays with independent gaussian columns, and the covariance
// array: the n x n grid of p x p blocks Cov(X_i, X_j). For iid columns the
// grid is delta_ij * Sigma, and right multiplication by an orthogonal
// matrix leaves it unchanged, which is what makes projections onto
// orthogonal submodules independent downstream.

namespace matmod {

// Column-iid gaussian law: column i ~ N_p(mean_i, sigma).
class GaussianSpec {
 public:
  GaussianSpec(Array mean, Eigen::MatrixXd sigma, std::uint64_t seed);

  const Array& mean() const { return mean_; }
  const Eigen::MatrixXd& sigma() const { return sigma_; }
  std::uint64_t seed() const { return seed_; }
  int p() const { return mean_.p(); }
  int n() const { return mean_.n(); }

 private:
  Array mean_;
  Eigen::MatrixXd sigma_;  // p x p symmetric positive-definite
  std::uint64_t seed_;
};

// Draws arrays from a GaussianSpec. The symmetric square root of sigma is
// computed once; draw(stream) is pure in (spec.seed, stream), so replicates
// can run in parallel on distinct streams.
class GaussianSampler {
 public:
  explicit GaussianSampler(GaussianSpec spec);

  Array draw(std::uint64_t stream) const;
  const GaussianSpec& spec() const { return spec_; }

 private:
  GaussianSpec spec_;
  Eigen::MatrixXd sigma_root_;
};

Array sample(const GaussianSpec& spec, std::uint64_t stream = 0);

// p x n matrix of independent N(0,1) entries, filled column-major.
Eigen::MatrixXd standard_normal_matrix(int p, int n, RngStream& rng);

// Haar-distributed n x n orthogonal matrix: QR of a gaussian matrix with
// the sign convention fixed by the R diagonal.
Eigen::MatrixXd random_orthogonal(int n, RngStream& rng);

// n x n grid of p x p covariance blocks; block (j, i) is the transpose of
// block (i, j). Kept as a block grid, never flattened.
class CovarianceArray {
 public:
  CovarianceArray(int p, int n);

  int p() const { return p_; }
  int n() const { return n_; }
  const Eigen::MatrixXd& block(int i, int j) const;
  Eigen::MatrixXd& block(int i, int j);

 private:
  int p_;
  int n_;
  std::vector<Eigen::MatrixXd> blocks_;
};

// delta_ij * sigma grid of an iid-column array.
CovarianceArray iid_covariance(int n, const Eigen::MatrixXd& sigma);

// Sample covariance blocks over replicates; divisor is the replicate count,
// matching the expectation it estimates.
CovarianceArray empirical_covariance_array(const std::vector<Array>& samples);

// Covariance of the right-multiplied array: block grid congruence
// (i,j) -> sum_kl q(k,i) block(k,l) q(l,j).
CovarianceArray transform_covariance(const CovarianceArray& v,
                                     const Eigen::MatrixXd& q);

}  // namespace matmod
