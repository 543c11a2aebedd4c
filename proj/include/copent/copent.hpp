#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "copent/ecd.hpp"
#include "copent/error.hpp"
#include "copent/knn_entropy.hpp"
#include "copent/matrix.hpp"

namespace copent {

struct CEResult {
  double copula_entropy = 0.0;      // nats
  double mutual_information = 0.0;  // always exactly -copula_entropy
  EstimatorConfig config;
  std::size_t samples = 0;
  std::size_t variables = 0;
  std::size_t duplicate_warnings = 0;
};

// Adds seeded Uniform(-scale, scale) noise to every entry, drawing column by
// column. Returns the input unchanged when scale == 0.
inline Matrix jitter(const Matrix& data, double scale, std::uint64_t seed) {
  if (scale == 0.0) return data;
  Matrix out = data;
  std::mt19937_64 gen(seed);
  for (std::size_t j = 0; j < data.cols(); ++j)
    for (std::size_t i = 0; i < data.rows(); ++i) {
      // 53 random bits -> [0, 1); avoids the library-specific uniform_real_distribution
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      out(i, j) += scale * (2.0 * u - 1.0);
    }
  return out;
}

// Fraction of entries that repeat an earlier value: 1 - (#distinct / T).
inline double tied_fraction(std::span<const double> values) {
  if (values.empty()) return 0.0;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto distinct = static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  return 1.0 - static_cast<double>(distinct) / static_cast<double>(v.size());
}

// Copula entropy of the joint sample: kNN entropy of the rank-transformed
// (optionally jittered) data. Mutual information is its negation.
inline CEResult copula_entropy(const Matrix& data, const EstimatorConfig& config = {}) {
  if (data.cols() < 2)
    throw ArgumentError("copula_entropy: needs at least 2 variables, got " +
                        std::to_string(data.cols()));
  config.validate(data.rows());
  const auto u = rank_transform(jitter(data, config.jitter_scale, config.seed));
  const auto h = entropy_knn_detail(u.values, config);
  CEResult r;
  r.copula_entropy = h.nats;
  r.mutual_information = -h.nats;
  r.config = config;
  r.samples = data.rows();
  r.variables = data.cols();
  r.duplicate_warnings = h.floored;
  return r;
}

// H(X) - sum_i H(X_i) - H_c(X), each term estimated with entropy_knn under the
// same config. Close to zero when the estimators are mutually consistent.
inline double decomposition_residual(const Matrix& data, const EstimatorConfig& config = {}) {
  if (data.cols() < 2)
    throw ArgumentError("decomposition_residual: needs at least 2 variables, got " +
                        std::to_string(data.cols()));
  config.validate(data.rows());
  const Matrix x = jitter(data, config.jitter_scale, config.seed);
  const double joint = entropy_knn(x, config);
  double marginals = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) marginals += entropy_knn(x.col_block(j, 1), config);
  const double copula = entropy_knn(rank_transform(x).values, config);
  return joint - marginals - copula;
}

}  // namespace copent
