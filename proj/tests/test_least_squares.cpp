#include <doctest.h>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "matmod/errors.hpp"
#include "matmod/least_squares.hpp"

using matmod::Array;
using matmod::Submodule;
using test_support::random_array;
using test_support::random_matrix;
using test_support::rel_dev;

namespace {

Submodule mean_submodule(int n) {
  return Submodule::from_rows(Eigen::MatrixXd::Ones(1, n));
}

// Members of the submodule are coefficient columns times the basis rows.
Array random_member(const Submodule& l, int p, matmod::RngStream& rng) {
  return Array(random_matrix(p, l.dim(), rng) * l.basis());
}

}  // namespace

TEST_SUITE("least_squares") {

TEST_CASE("mean submodule: the minimizer is the arithmetic mean") {
  Eigen::MatrixXd data(2, 2);
  data << 1, 3, 2, 4;
  const auto sol = matmod::matrix_ls(Array(data), mean_submodule(2));
  Eigen::MatrixXd expected(2, 2);
  expected << 2, 2, 3, 3;
  CHECK(rel_dev(sol.fitted.matrix(), expected) < 1e-14);
  Eigen::MatrixXd resid_sq(2, 2);
  resid_sq << 2, 2, 2, 2;
  CHECK(rel_dev(sol.residual_square.entries(), resid_sq) < 1e-13);
}

TEST_CASE("element of the submodule fits itself") {
  matmod::RngStream rng(31);
  const Submodule l = test_support::random_submodule(6, 2, rng);
  const Array member = random_member(l, 3, rng);
  const auto sol = matmod::matrix_ls(member, l);
  CHECK(rel_dev(sol.fitted.matrix(), member.matrix()) < 1e-12);
  CHECK(matmod::max_abs(sol.residual_square.entries()) < 1e-20);
}

TEST_CASE("p = 1 matches the univariate normal-equations solution") {
  matmod::RngStream rng(32);
  for (int k = 0; k < 30; ++k) {
    const Eigen::MatrixXd gen = random_matrix(2, 7, rng);
    const Submodule l = Submodule::from_rows(gen);
    const Array y = random_array(1, 7, rng);
    const auto sol = matmod::matrix_ls(y, l);
    const Eigen::RowVectorXd oracle =
        test_support::row_projection_oracle(y.matrix().row(0), gen);
    CHECK(rel_dev(sol.fitted.matrix(), oracle) < 1e-10);
  }
}

TEST_CASE("trace objective agrees with the matrix solution") {
  matmod::RngStream rng(33);
  for (int k = 0; k < 50; ++k) {
    const int n = 5 + static_cast<int>(rng.next_u64() % 4);
    const int r = 1 + static_cast<int>(rng.next_u64() % 3);
    const Submodule l = test_support::random_submodule(n, r, rng);
    const Array x = random_array(2, n, rng);
    const auto matrix_sol = matmod::matrix_ls(x, l);
    const auto trace_sol = matmod::trace_ls(x, l);
    CHECK(rel_dev(matrix_sol.fitted.matrix(), trace_sol.fitted.matrix()) <
          1e-10);

    // The shared minimizer beats random probes on the scalar objective.
    const double best = matmod::trace_objective(x, trace_sol.fitted);
    for (int probe = 0; probe < 100; ++probe) {
      CHECK(best <= matmod::trace_objective(x, random_member(l, 2, rng)) +
                        1e-12);
    }
  }
}

TEST_CASE("zero submodule: fit is zero, residual is the scalar square") {
  matmod::RngStream rng(34);
  const Array x = random_array(2, 4, rng);
  const auto sol = matmod::trace_ls(x, Submodule::zero(4));
  CHECK(matmod::max_abs(sol.fitted.matrix()) == 0.0);
  CHECK(rel_dev(sol.residual_square.entries(),
                matmod::scalar_square(x).entries()) == 0.0);
}

TEST_CASE("mean-model objective splits into scatter plus shift terms") {
  matmod::RngStream rng(35);
  const int n = 6;
  for (int k = 0; k < 30; ++k) {
    const Array x = random_array(2, n, rng);
    const Eigen::VectorXd y = random_matrix(2, 1, rng);
    const Eigen::VectorXd mean = x.matrix().rowwise().mean();

    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(2, 2);
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(2, 2);
    for (int i = 0; i < n; ++i) {
      total += (x.element(i) - y) * (x.element(i) - y).transpose();
      scatter += (x.element(i) - mean) * (x.element(i) - mean).transpose();
    }
    const Eigen::MatrixXd shift =
        n * (mean - y) * (mean - y).transpose();
    CHECK(rel_dev(total, scatter + shift) < 1e-10);
  }
}

TEST_CASE("matrix minimality: residual square is smallest in the matrix order") {
  matmod::RngStream rng(36);
  const Submodule l = test_support::random_submodule(7, 3, rng);
  const Array x = random_array(2, 7, rng);
  const auto sol = matmod::matrix_ls(x, l);
  for (int probe = 0; probe < 200; ++probe) {
    const Array z = random_member(l, 2, rng);
    const matmod::MatScalar gap(matmod::scalar_square(x - z).entries() -
                                sol.residual_square.entries());
    CHECK(gap.min_eigenvalue() >= -1e-8);
  }
}

TEST_CASE("row reduction: lambda^T of the fit is the univariate fit") {
  matmod::RngStream rng(37);
  for (int k = 0; k < 30; ++k) {
    const Eigen::MatrixXd gen = random_matrix(3, 8, rng);
    const Submodule l = Submodule::from_rows(gen);
    const Array x = random_array(2, 8, rng);
    const auto sol = matmod::matrix_ls(x, l);
    const Eigen::VectorXd lambda = random_matrix(2, 1, rng);
    CHECK(rel_dev(lambda.transpose() * sol.fitted.matrix(),
                  test_support::row_projection_oracle(
                      lambda.transpose() * x.matrix(), gen)) < 1e-10);
  }
}

TEST_CASE("shape errors") {
  matmod::RngStream rng(38);
  const Array x = random_array(2, 4, rng);
  CHECK_THROWS_AS(matmod::matrix_ls(x, Submodule::full(5)),
                  matmod::ShapeError);
}

}  // TEST_SUITE
