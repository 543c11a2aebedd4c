#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "copent/error.hpp"
#include "copent/matrix.hpp"

namespace copent {

// Pseudo-observations of the empirical copula: one row per sample, entries in (0, 1].
struct CopulaSample {
  Matrix values;
  std::vector<std::string> origin_columns;
};

// Empirical CDF of every column evaluated at the sample points:
//   u(t, i) = #{ s : x(s, i) <= x(t, i) } / T.
// Tied observations share the largest count (no midranks). Runs in
// O(T log T) per column via sort + scan.
inline CopulaSample rank_transform(const Matrix& data, std::vector<std::string> origin_columns = {}) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n < 2) throw ArgumentError("rank_transform: need at least 2 samples, got " + std::to_string(n));
  detail::require_finite(data, "rank_transform");
  if (origin_columns.empty())
    for (std::size_t j = 0; j < d; ++j) origin_columns.push_back("c" + std::to_string(j + 1));
  if (origin_columns.size() != d)
    throw ArgumentError("rank_transform: origin column count differs from data width");

  CopulaSample out{Matrix(n, d), std::move(origin_columns)};
  std::vector<std::size_t> order(n);
  const double total = static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return data(a, j) < data(b, j); });
    std::size_t i = 0;
    while (i < n) {
      std::size_t end = i + 1;
      while (end < n && data(order[end], j) == data(order[i], j)) ++end;
      const double u = static_cast<double>(end) / total;
      for (std::size_t r = i; r < end; ++r) out.values(order[r], j) = u;
      i = end;
    }
  }
  return out;
}

}  // namespace copent
