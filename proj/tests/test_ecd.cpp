#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "copent/ecd.hpp"
#include "oracles.hpp"

using copent::Matrix;
using copent::rank_transform;

TEST(RankTransform, CountsObservationsAtOrBelow) {
  const auto u = rank_transform(Matrix{{3.1}, {1.2}, {5.0}}).values;
  EXPECT_EQ(u(0, 0), 2.0 / 3.0);
  EXPECT_EQ(u(1, 0), 1.0 / 3.0);
  EXPECT_EQ(u(2, 0), 1.0);
}

TEST(RankTransform, TiesShareTheMaximumCount) {
  const auto u = rank_transform(Matrix{{7}, {7}}).values;
  EXPECT_EQ(u(0, 0), 1.0);
  EXPECT_EQ(u(1, 0), 1.0);

  const auto v = rank_transform(Matrix{{1}, {2}, {2}, {0}}).values;
  EXPECT_EQ(v(0, 0), 0.5);
  EXPECT_EQ(v(1, 0), 1.0);
  EXPECT_EQ(v(2, 0), 1.0);
  EXPECT_EQ(v(3, 0), 0.25);
}

TEST(RankTransform, SortedColumnIsIdentityPermutation) {
  const auto u = rank_transform(Matrix{{1}, {2}, {3}, {4}, {5}}).values;
  const double expected[] = {0.2, 0.4, 0.6, 0.8, 1.0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(u(i, 0), expected[i]);
}

TEST(RankTransform, Errors) {
  EXPECT_THROW(rank_transform(Matrix{{1.0}}), copent::ArgumentError);
  EXPECT_THROW(rank_transform(Matrix{{1.0}, {NAN}}), copent::ArgumentError);
  EXPECT_THROW(rank_transform(Matrix{{1.0}, {INFINITY}}), copent::ArgumentError);
}

TEST(RankTransform, MatchesLiteralDoubleLoopBitExactly) {
  std::mt19937_64 g(3);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + g() % 200, d = 1 + g() % 4;
    Matrix x(n, d);
    const bool discrete = rep % 2 == 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j)
        x(i, j) = discrete ? static_cast<double>(g() % 5) : oracle::uniform01(g);
    EXPECT_EQ(rank_transform(x).values, oracle::literal_rank(x)) << "rep " << rep;
  }
}

TEST(RankTransform, EntriesInUnitIntervalAndTieFreeColumnsArePermutations) {
  const auto x = oracle::normal_matrix(300, 3, 5);
  const auto u = rank_transform(x).values;
  for (std::size_t j = 0; j < 3; ++j) {
    auto c = u.col(j);
    for (double v : c) {
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    std::sort(c.begin(), c.end());
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i], static_cast<double>(i + 1) / 300.0);
  }
}

TEST(RankTransform, InvariantUnderStrictlyIncreasingMaps) {
  const auto x = oracle::normal_matrix(500, 2, 17);
  Matrix y = x;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    y(i, 0) = std::exp(x(i, 0));
    y(i, 1) = x(i, 1) * x(i, 1) * x(i, 1) + 2.0 * x(i, 1) - 7.0;
  }
  EXPECT_EQ(rank_transform(x).values, rank_transform(y).values);
}

TEST(RankTransform, PermutationEquivariant) {
  const auto x = oracle::uniform_matrix(200, 3, 23);
  std::vector<std::size_t> perm(x.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(29));
  Matrix px(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) px(i, j) = x(perm[i], j);
  const auto u = rank_transform(x).values;
  const auto pu = rank_transform(px).values;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) EXPECT_EQ(pu(i, j), u(perm[i], j));
}
