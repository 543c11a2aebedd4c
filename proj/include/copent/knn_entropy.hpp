#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "copent/digamma.hpp"
#include "copent/error.hpp"
#include "copent/kdtree.hpp"
#include "copent/matrix.hpp"

namespace copent {

// Every knob of the estimators in one place.
struct EstimatorConfig {
  int k = 3;
  Norm norm = Norm::max;
  double jitter_scale = 0.0;  // 0 disables jitter
  std::uint64_t seed = 0;

  void validate(std::size_t samples) const {
    if (k < 1) throw ArgumentError("k must be a positive integer, got " + std::to_string(k));
    if (static_cast<std::size_t>(k) >= samples)
      throw ArgumentError("k = " + std::to_string(k) + " needs at least " + std::to_string(k + 1) +
                          " samples, got " + std::to_string(samples));
    if (!(jitter_scale >= 0.0) || !std::isfinite(jitter_scale))
      throw ArgumentError("jitter_scale must be a nonnegative finite number");
  }
};

struct NeighborResult {
  std::vector<double> distances;
};

// Below this sample count the neighbour search is a plain scan.
inline constexpr std::size_t kBruteForceCutoff = 64;

// Exact distance from every point to its k-th nearest other point.
inline NeighborResult kth_neighbor_distances(const Matrix& points, std::size_t k, Norm norm) {
  const std::size_t n = points.rows();
  if (k == 0 || k >= n)
    throw ArgumentError("kth_neighbor_distances: k = " + std::to_string(k) +
                        " must lie in [1, T-1] with T = " + std::to_string(n));
  detail::require_finite(points, "kth_neighbor_distances");

  NeighborResult out{std::vector<double>(n)};
  if (n < kBruteForceCutoff) {
    std::vector<double> d;
    d.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      d.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) d.push_back(distance(points.row(i), points.row(j), norm));
      std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
      out.distances[i] = d[k - 1];
    }
    return out;
  }
  const KdTree tree(points, norm);
  for (std::size_t i = 0; i < n; ++i) out.distances[i] = tree.kth_distance(i, k);
  return out;
}

// Log-volume of the unit ball of the norm in d dimensions, expressed for the
// diameter form used below (max norm: 1; euclidean: pi^(d/2) / Gamma(d/2+1) / 2^d).
inline double log_unit_ball_constant(std::size_t d, Norm norm) {
  if (norm == Norm::max) return 0.0;
  const double half = 0.5 * static_cast<double>(d);
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0) -
         static_cast<double>(d) * std::numbers::ln2;
}

// Floor applied to zero neighbour distances (coincident points) before the log.
inline constexpr double kDistanceFloor = 1e-15;

struct KnnEntropyResult {
  double nats = 0.0;
  std::size_t floored = 0;  // number of zero distances replaced by kDistanceFloor
};

// Kozachenko-Leonenko entropy estimate with the Kraskov digamma correction:
//   H = psi(T) - psi(k) + log c_d + (d/T) sum_t log(2 eps_t)
// where eps_t is the distance to the k-th neighbour of point t.
inline KnnEntropyResult entropy_knn_detail(const Matrix& points, const EstimatorConfig& config) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  config.validate(n);
  if (d == 0) throw ArgumentError("entropy_knn: points have zero dimensions");
  detail::require_finite(points, "entropy_knn");

  bool all_same = true;
  for (std::size_t i = 1; i < n && all_same; ++i)
    all_same = std::equal(points.row(i).begin(), points.row(i).end(), points.row(0).begin());
  if (all_same) throw DegenerateInput("entropy_knn: all points are identical; entropy is undefined");

  const auto eps = kth_neighbor_distances(points, static_cast<std::size_t>(config.k), config.norm);
  KnnEntropyResult r;
  double sum = 0.0;
  for (double e : eps.distances) {
    if (e <= 0.0) {
      e = kDistanceFloor;
      ++r.floored;
    }
    sum += std::log(2.0 * e);
  }
  const double t = static_cast<double>(n);
  r.nats = digamma(t) - digamma(static_cast<double>(config.k)) +
           log_unit_ball_constant(d, config.norm) + static_cast<double>(d) * sum / t;
  return r;
}

inline double entropy_knn(const Matrix& points, const EstimatorConfig& config = {}) {
  return entropy_knn_detail(points, config).nats;
}

}  // namespace copent
