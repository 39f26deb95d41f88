#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "matmod/errors.hpp"
#include "matmod/linear_model.hpp"
#include "matmod/random.hpp"

using matmod::Array;
using matmod::ModelFit;
using matmod::ModelSpec;
using matmod::Submodule;
using test_support::random_matrix;
using test_support::rel_dev;

TEST_SUITE("linear_model") {

TEST_CASE("one-way layout: indicator rows and the mean special case") {
  const ModelSpec spec = matmod::one_way_layout({2, 2});
  Eigen::MatrixXd indicators(2, 4);
  indicators << 1, 1, 0, 0, 0, 0, 1, 1;
  CHECK(spec.l.spans_same(Submodule::from_rows(indicators)));
  CHECK(spec.l.dim() == 2);

  const ModelSpec mean_spec = matmod::one_way_layout({5});
  CHECK(mean_spec.l.spans_same(
      Submodule::from_rows(Eigen::MatrixXd::Ones(1, 5))));

  CHECK_THROWS_AS(matmod::one_way_layout({}), matmod::ArgumentError);
  CHECK_THROWS_AS(matmod::one_way_layout({2, 0, 1}), matmod::ArgumentError);
}

TEST_CASE("one-way fit equals groupwise means") {
  matmod::RngStream rng(71);
  const std::vector<int> sizes = {3, 4, 2};
  const ModelSpec spec = matmod::one_way_layout(sizes);
  const Array x = test_support::random_array(2, 9, rng);
  const ModelFit fit = matmod::fit(x, spec);

  int offset = 0;
  for (int group = 0; group < 3; ++group) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
    for (int k = 0; k < sizes[static_cast<std::size_t>(group)]; ++k) {
      mean += x.element(offset + k);
    }
    mean /= sizes[static_cast<std::size_t>(group)];
    for (int k = 0; k < sizes[static_cast<std::size_t>(group)]; ++k) {
      CHECK(matmod::max_abs(fit.m_hat().element(offset + k) - mean) < 1e-12);
    }
    offset += sizes[static_cast<std::size_t>(group)];
  }
}

TEST_CASE("regression designs: mean case, saturated case, rank deficiency") {
  CHECK(matmod::regression_design(Eigen::MatrixXd::Ones(1, 6))
            .l.spans_same(Submodule::from_rows(Eigen::MatrixXd::Ones(1, 6))));

  const ModelSpec saturated =
      matmod::regression_design(Eigen::MatrixXd::Identity(2, 2));
  matmod::RngStream rng(72);
  const Array y = test_support::random_array(2, 2, rng);
  const ModelFit fit = matmod::fit(y, saturated);
  CHECK(matmod::max_abs(fit.residual_square().entries()) < 1e-20);
  CHECK(fit.saturated());

  Eigen::MatrixXd repeated(2, 5);
  repeated.row(0) = Eigen::RowVectorXd::LinSpaced(5, 1.0, 5.0);
  repeated.row(1) = 2.0 * repeated.row(0);
  const ModelSpec deficient = matmod::regression_design(repeated);
  CHECK(deficient.l.dim() == 1);
  const ModelSpec single = matmod::regression_design(repeated.topRows(1));
  const Array obs = test_support::random_array(2, 5, rng);
  CHECK(rel_dev(matmod::fit(obs, deficient).m_hat().matrix(),
                matmod::fit(obs, single).m_hat().matrix()) < 1e-12);

  CHECK_THROWS_AS(matmod::regression_design(Eigen::MatrixXd(0, 4)),
                  matmod::ArgumentError);
}

TEST_CASE("fit: saturated example keeps m_hat, denies sigma_hat") {
  Eigen::MatrixXd data(1, 2);
  data << 2, 4;
  const ModelFit fit = matmod::fit(Array(data), matmod::one_way_layout({1, 1}));
  CHECK(fit.m_hat().matrix() == data);
  CHECK(matmod::max_abs(fit.residual_square().entries()) < 1e-25);
  CHECK(fit.saturated());
  CHECK_THROWS_AS(fit.sigma_hat(), matmod::DfError);
}

TEST_CASE("fit: mean model hand example") {
  Eigen::MatrixXd data(2, 2);
  data << 1, 3, 2, 4;
  const ModelFit fit =
      matmod::fit(Array(data), matmod::one_way_layout({2}));
  Eigen::MatrixXd m_hat(2, 2);
  m_hat << 2, 2, 3, 3;
  CHECK(rel_dev(fit.m_hat().matrix(), m_hat) < 1e-14);
  Eigen::MatrixXd resid(2, 2);
  resid << 2, 2, 2, 2;
  CHECK(rel_dev(fit.residual_square().entries(), resid) < 1e-13);
  CHECK(rel_dev(fit.sigma_hat(), resid) < 1e-13);  // n - m = 1
  CHECK(fit.n() == 2);
  CHECK(fit.m() == 1);
  CHECK(fit.p() == 2);
}

TEST_CASE("fit: dimensions come from the computed rank") {
  matmod::RngStream rng(73);
  Eigen::MatrixXd repeated(2, 6);
  repeated.row(0) = Eigen::RowVectorXd::LinSpaced(6, 0.0, 5.0);
  repeated.row(1) = repeated.row(0);
  const ModelFit fit = matmod::fit(test_support::random_array(1, 6, rng),
                                   matmod::regression_design(repeated));
  CHECK(fit.m() == 1);
  CHECK(rel_dev(fit.sigma_hat(),
                fit.residual_square().entries() / 5.0) == 0.0);
}

TEST_CASE("regression coefficients: identity design, textbook line, recovery") {
  matmod::RngStream rng(74);

  Eigen::MatrixXd partial_identity = Eigen::MatrixXd::Identity(4, 4).topRows(2);
  const Array y4 = test_support::random_array(2, 4, rng);
  const ModelFit fit_id =
      matmod::fit(y4, matmod::regression_design(partial_identity));
  const Eigen::MatrixXd coef_id =
      matmod::regression_coefficients(fit_id, partial_identity);
  CHECK(rel_dev(coef_id, fit_id.m_hat().matrix().leftCols(2)) < 1e-12);

  // p = 1 straight line against the closed-form slope and intercept.
  Eigen::MatrixXd design(2, 4);
  design.row(0).setOnes();
  design.row(1) << 1, 2, 3, 4;
  Eigen::MatrixXd yline(1, 4);
  yline << 2.1, 3.9, 6.2, 7.8;
  const ModelFit fit_line =
      matmod::fit(Array(yline), matmod::regression_design(design));
  const Eigen::MatrixXd coef =
      matmod::regression_coefficients(fit_line, design);
  const double xbar = 2.5;
  const double ybar = yline.row(0).mean();
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < 4; ++i) {
    sxy += (design(1, i) - xbar) * (yline(0, i) - ybar);
    sxx += (design(1, i) - xbar) * (design(1, i) - xbar);
  }
  const double slope = sxy / sxx;
  const double intercept = ybar - slope * xbar;
  CHECK(std::abs(coef(0, 0) - intercept) < 1e-12);
  CHECK(std::abs(coef(0, 1) - slope) < 1e-12);

  // noiseless multivariate data recovers the generating coefficients
  const Eigen::MatrixXd x_design = random_matrix(3, 8, rng);
  const Eigen::MatrixXd a0 = random_matrix(2, 3, rng);
  const Array noiseless(a0 * x_design);
  const ModelFit fit_exact =
      matmod::fit(noiseless, matmod::regression_design(x_design));
  CHECK(rel_dev(matmod::regression_coefficients(fit_exact, x_design), a0) <
        1e-9);

  Eigen::MatrixXd deficient(2, 5);
  deficient.row(0) = Eigen::RowVectorXd::LinSpaced(5, 1.0, 5.0);
  deficient.row(1) = 3.0 * deficient.row(0);
  const ModelFit fit_def = matmod::fit(test_support::random_array(1, 5, rng),
                                       matmod::regression_design(deficient));
  CHECK_THROWS_AS(matmod::regression_coefficients(fit_def, deficient),
                  matmod::NonUniqueError);
}

TEST_CASE("coefficient equation holds: A x_design = m_hat") {
  matmod::RngStream rng(75);
  const Eigen::MatrixXd design = random_matrix(3, 9, rng);
  const Array y = test_support::random_array(2, 9, rng);
  const ModelFit fit = matmod::fit(y, matmod::regression_design(design));
  const Eigen::MatrixXd coef = matmod::regression_coefficients(fit, design);
  CHECK(matmod::max_abs(coef * design - fit.m_hat().matrix()) < 1e-8);
}

TEST_CASE("sufficiency: likelihood exponent through the statistic pair") {
  matmod::RngStream rng(76);
  for (int k = 0; k < 20; ++k) {
    const int n = 8;
    const ModelSpec spec = matmod::one_way_layout({3, 5});
    const Array x = test_support::random_array(2, n, rng);
    const ModelFit fit = matmod::fit(x, spec);
    const Eigen::MatrixXd sigma = test_support::random_spd(2, rng);
    const Eigen::MatrixXd sigma_inv = sigma.inverse();
    // mean element of the model submodule
    const Array mu(random_matrix(2, spec.l.dim(), rng) * spec.l.basis());

    const Eigen::MatrixXd direct =
        matmod::scalar_square(x - mu).entries();
    const Eigen::MatrixXd split =
        fit.residual_square().entries() +
        matmod::scalar_square(fit.m_hat() - mu).entries();
    const double exp_direct = -0.5 * (sigma_inv * direct).trace();
    const double exp_split = -0.5 * (sigma_inv * split).trace();
    CHECK(std::abs(exp_direct - exp_split) <
          1e-8 * (1.0 + std::abs(exp_direct)));
  }
}

TEST_CASE("pythagorean identity around any model element") {
  matmod::RngStream rng(77);
  for (int k = 0; k < 20; ++k) {
    const ModelSpec spec = matmod::one_way_layout({4, 4});
    const Array x = test_support::random_array(3, 8, rng);
    const ModelFit fit = matmod::fit(x, spec);
    const Array mu(random_matrix(3, spec.l.dim(), rng) * spec.l.basis());
    CHECK(rel_dev(matmod::scalar_square(x - mu).entries(),
                  fit.residual_square().entries() +
                      matmod::scalar_square(fit.m_hat() - mu).entries()) <
          1e-10);
  }
}

TEST_CASE("estimates are unbiased (small-scale check)") {
  const int replicates = 3000;
  Eigen::MatrixXd sigma(2, 2);
  sigma << 1.0, 0.3, 0.3, 0.7;
  const ModelSpec spec = matmod::one_way_layout({3, 3});
  Eigen::MatrixXd mean_matrix(2, 6);
  mean_matrix << 1, 1, 1, -2, -2, -2, 0, 0, 0, 1, 1, 1;
  const matmod::GaussianSampler sampler(
      matmod::GaussianSpec(Array(mean_matrix), sigma, 404));

  Eigen::MatrixXd sum_sigma = Eigen::MatrixXd::Zero(2, 2);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(2, 2);
  for (int r = 0; r < replicates; ++r) {
    const Eigen::MatrixXd s =
        matmod::fit(sampler.draw(static_cast<std::uint64_t>(r)), spec)
            .sigma_hat();
    sum_sigma += s;
    sum_sq += s.cwiseProduct(s);
  }
  const Eigen::MatrixXd mean = sum_sigma / replicates;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double var = sum_sq(a, b) / replicates - mean(a, b) * mean(a, b);
      CHECK(std::abs(mean(a, b) - sigma(a, b)) <
            5.0 * std::sqrt(var / replicates));
    }
  }
}

TEST_CASE("shape errors") {
  matmod::RngStream rng(78);
  const Array x = test_support::random_array(2, 5, rng);
  CHECK_THROWS_AS(matmod::fit(x, matmod::one_way_layout({2, 2})),
                  matmod::ShapeError);
  const ModelFit fit = matmod::fit(x, matmod::one_way_layout({2, 3}));
  CHECK_THROWS_AS(
      matmod::regression_coefficients(fit, Eigen::MatrixXd::Ones(1, 4)),
      matmod::ShapeError);
}

}  // TEST_SUITE
