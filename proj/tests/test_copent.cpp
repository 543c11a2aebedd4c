#include <gtest/gtest.h>

#include <cmath>

#include "copent/copent.hpp"
#include "oracles.hpp"

using namespace copent;

TEST(CopulaEntropy, IndependentUniformsHaveZeroMI) {
  const auto r = copula_entropy(oracle::uniform_matrix(2000, 2, 201));
  EXPECT_NEAR(r.mutual_information, 0.0, 0.05);
  EXPECT_EQ(r.samples, 2000u);
  EXPECT_EQ(r.variables, 2u);
}

// Single-seed spread at T=2000 (rmse ~0.045, boundary bias ~-0.035) is close
// to the tolerance, so the recovery check averages seeds 0..9.
TEST(CopulaEntropy, BivariateGaussianMatchesAnalyticMI) {
  double mi = 0.0, ce = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = copula_entropy(oracle::bivariate_normal(2000, 0.9, seed));
    mi += r.mutual_information / 10.0;
    ce += r.copula_entropy / 10.0;
  }
  EXPECT_NEAR(mi, oracle::gaussian_mi(0.9), 0.06);
  EXPECT_NEAR(ce, -oracle::gaussian_mi(0.9), 0.06);
}

TEST(CopulaEntropy, PerfectDependenceIsLarge) {
  Matrix x = oracle::normal_matrix(2000, 2, 205);
  for (std::size_t i = 0; i < x.rows(); ++i) x(i, 1) = x(i, 0);
  const auto r = copula_entropy(x);
  EXPECT_GT(r.mutual_information, 2.0);
  EXPECT_LT(r.copula_entropy, -2.0);
}

TEST(CopulaEntropy, MutualInformationIsExactNegation) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = copula_entropy(oracle::bivariate_normal(300, 0.4, seed));
    EXPECT_EQ(r.mutual_information + r.copula_entropy, 0.0);
    EXPECT_EQ(r.mutual_information, -r.copula_entropy);
  }
}

TEST(CopulaEntropy, MonotoneInvarianceIsBitExact) {
  const auto x = oracle::bivariate_normal(1500, 0.6, 207);
  Matrix y = x;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    y(i, 0) = std::exp(3.0 * x(i, 0));
    y(i, 1) = std::atan(x(i, 1)) * 100.0 + 4.0;
  }
  EXPECT_EQ(copula_entropy(x).copula_entropy, copula_entropy(y).copula_entropy);
}

TEST(CopulaEntropy, ColumnOrderDoesNotMatter) {
  const auto x = oracle::normal_matrix(800, 3, 209);
  Matrix y(x.rows(), 3);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    y(i, 0) = x(i, 2);
    y(i, 1) = x(i, 0);
    y(i, 2) = x(i, 1);
  }
  EXPECT_NEAR(copula_entropy(x).copula_entropy, copula_entropy(y).copula_entropy, 1e-12);
}

TEST(CopulaEntropy, ErrorTrendsDownWithSampleSize) {
  const double truth = oracle::gaussian_mi(0.5);
  double err_small = 0.0, err_large = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    err_small += std::fabs(copula_entropy(oracle::bivariate_normal(500, 0.5, 300 + seed)).mutual_information - truth);
    err_large += std::fabs(copula_entropy(oracle::bivariate_normal(4000, 0.5, 400 + seed)).mutual_information - truth);
  }
  EXPECT_LE(err_large / 10.0, err_small / 10.0);
}

TEST(CopulaEntropy, JitterBreaksTiesDeterministically) {
  Matrix x(600, 2);
  const auto u = oracle::uniform_matrix(600, 2, 211);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    x(i, 0) = std::floor(u(i, 0) * 4.0);
    x(i, 1) = std::floor(u(i, 1) * 3.0);
  }
  const auto tied = copula_entropy(x);
  EXPECT_GT(tied.duplicate_warnings, 0u);

  EstimatorConfig cfg;
  cfg.jitter_scale = 1e-10;
  cfg.seed = 99;
  const auto a = copula_entropy(x, cfg);
  const auto b = copula_entropy(x, cfg);
  EXPECT_EQ(a.duplicate_warnings, 0u);
  EXPECT_EQ(a.copula_entropy, b.copula_entropy);
  EXPECT_NEAR(a.mutual_information, 0.0, 0.1);  // independent discrete columns
}

TEST(CopulaEntropy, JitterHelper) {
  const Matrix x{{1, 2}, {3, 4}};
  EXPECT_EQ(jitter(x, 0.0, 1), x);
  const auto j = jitter(x, 0.5, 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t c = 0; c < 2; ++c) EXPECT_LE(std::fabs(j(i, c) - x(i, c)), 0.5);
  EXPECT_EQ(jitter(x, 0.5, 1), j);
  EXPECT_NE(jitter(x, 0.5, 2), j);
}

TEST(CopulaEntropy, TiedFraction) {
  EXPECT_EQ(tied_fraction(std::vector<double>{1, 2, 3, 4}), 0.0);
  EXPECT_EQ(tied_fraction(std::vector<double>{1, 1, 1, 1}), 0.75);
}

TEST(CopulaEntropy, Errors) {
  EXPECT_THROW(copula_entropy(oracle::uniform_matrix(100, 1, 1)), ArgumentError);
  EstimatorConfig cfg;
  cfg.k = 10;
  EXPECT_THROW(copula_entropy(oracle::uniform_matrix(10, 2, 1), cfg), ArgumentError);
}

TEST(Decomposition, IndependentGaussians) {
  EXPECT_NEAR(decomposition_residual(oracle::normal_matrix(5000, 2, 213)), 0.0, 0.1);
}

TEST(Decomposition, CorrelatedGaussians) {
  EXPECT_NEAR(decomposition_residual(oracle::bivariate_normal(5000, 0.5, 215)), 0.0, 0.1);
}

TEST(Decomposition, ScaleCancels) {
  const auto x = oracle::bivariate_normal(3000, 0.5, 217);
  Matrix y = x;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) *= 10.0;
  EXPECT_NEAR(decomposition_residual(y), decomposition_residual(x), 1e-9);
}

TEST(Decomposition, RequiresTwoVariables) {
  EXPECT_THROW(decomposition_residual(oracle::uniform_matrix(100, 1, 1)), ArgumentError);
}
