#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "copent/dcor.hpp"
#include "null_tables.hpp"
#include "oracles.hpp"

using namespace copent;

TEST(Dcor, AffineImageHasUnitCorrelation) {
  const auto x = oracle::normal_matrix(300, 1, 301);
  Matrix y = x;
  for (std::size_t i = 0; i < y.rows(); ++i) y(i, 0) = 2.0 * x(i, 0) + 3.0;
  EXPECT_NEAR(distance_correlation(y, x).dcor, 1.0, 1e-12);
  EXPECT_NEAR(distance_correlation(x, y).dcor_raw, 1.0, 1e-12);
}

TEST(Dcor, ConstantSampleGivesZero) {
  const auto x = oracle::normal_matrix(50, 1, 303);
  const Matrix c(50, 1, 4.2);
  const auto r = distance_correlation(c, x);
  EXPECT_EQ(r.dcor, 0.0);
  EXPECT_EQ(r.dvarx, 0.0);
}

TEST(Dcor, IndependentUniformsStayBelowNullBound) {
  const auto m = oracle::uniform_matrix(1000, 2, 305);
  const double v = distance_correlation(m.col_block(0, 1), m.col_block(1, 1)).dcor;
  EXPECT_LE(v, 0.08);
  EXPECT_LE(v, null_tables::kDcorQ99T1000);
}

TEST(Dcor, Symmetric) {
  const auto x = oracle::normal_matrix(200, 2, 307);
  const auto y = oracle::bivariate_normal(200, 0.7, 309).col_block(1, 1);
  EXPECT_NEAR(distance_correlation(x, y).dcor, distance_correlation(y, x).dcor, 1e-12);
}

TEST(Dcor, InvariantUnderRotationAndTranslation) {
  const auto x = oracle::normal_matrix(250, 2, 311);
  Matrix y(250, 1);
  for (std::size_t i = 0; i < 250; ++i) y(i, 0) = x(i, 0) * x(i, 1) + 0.3 * x(i, 0);
  const double th = 0.7;
  Matrix rx(250, 2);
  for (std::size_t i = 0; i < 250; ++i) {
    rx(i, 0) = std::cos(th) * x(i, 0) - std::sin(th) * x(i, 1) + 5.0;
    rx(i, 1) = std::sin(th) * x(i, 0) + std::cos(th) * x(i, 1) - 2.0;
  }
  EXPECT_NEAR(distance_correlation(x, y).dcor, distance_correlation(rx, y).dcor, 1e-9);
}

TEST(Dcor, MatchesLiteralDoubleCentringOracle) {
  std::mt19937_64 g(313);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + g() % 99, p = 1 + g() % 3, q = 1 + g() % 3;
    const auto x = oracle::normal_matrix(n, p, g());
    auto y = oracle::uniform_matrix(n, q, g());
    for (std::size_t i = 0; i < n; ++i) y(i, 0) += 0.5 * x(i, 0);
    const auto r = distance_correlation(x, y);
    EXPECT_NEAR(r.dcor_raw, oracle::literal_dcor(x, y), 1e-10) << "rep " << rep;
    EXPECT_GE(r.dcov2, -1e-12);
    EXPECT_GE(r.dvarx, -1e-12);
    EXPECT_GE(r.dvary, -1e-12);
    EXPECT_GE(r.dcor, 0.0);
    EXPECT_LE(r.dcor, 1.0);
  }
}

TEST(Dcor, Errors) {
  EXPECT_THROW(distance_correlation(Matrix(5, 1), Matrix(6, 1)), ArgumentError);
  EXPECT_THROW(distance_correlation(Matrix(1, 1), Matrix(1, 1)), ArgumentError);
  EXPECT_THROW(distance_correlation(Matrix{{1}, {NAN}}, Matrix{{1}, {2}}), ArgumentError);
}
