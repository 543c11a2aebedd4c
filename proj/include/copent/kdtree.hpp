#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "copent/error.hpp"
#include "copent/matrix.hpp"

namespace copent {

enum class Norm { max, euclidean };

inline const char* to_string(Norm n) { return n == Norm::max ? "max" : "euclidean"; }

// Distance between two points. Coordinates are combined in index order so the
// same pair always yields the same bits no matter which search produced it.
inline double distance(std::span<const double> a, std::span<const double> b, Norm norm) noexcept {
  if (norm == Norm::max) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a[j] - b[j]));
    return m;
  }
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return std::sqrt(s);
}

// Exact k-d tree over the rows of a matrix, specialised for "distance to the
// k-th nearest other point" queries.
class KdTree {
public:
  static constexpr std::size_t kLeafSize = 8;

  KdTree(Matrix points, Norm norm) : points_(std::move(points)), norm_(norm) {
    index_.resize(points_.rows());
    std::iota(index_.begin(), index_.end(), std::size_t{0});
    if (!index_.empty()) build(0, index_.size());
  }

  std::size_t size() const noexcept { return points_.rows(); }
  Norm norm() const noexcept { return norm_; }

  // Distance from row `self` to its k-th nearest neighbour, excluding `self`
  // by index (coincident duplicates count at distance 0).
  double kth_distance(std::size_t self, std::size_t k) const {
    if (k == 0 || k >= size())
      throw ArgumentError("KdTree::kth_distance: k must lie in [1, T-1]");
    std::priority_queue<double> heap;
    search(0, points_.row(self), self, k, heap);
    return heap.top();
  }

private:
  struct Node {
    std::size_t begin = 0, end = 0;  // leaf range in index_
    std::size_t left = 0, right = 0;
    std::size_t dim = 0;
    double split = 0.0;
    bool leaf = true;
  };

  std::size_t build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back(Node{begin, end});
    if (end - begin <= kLeafSize) return id;

    // Split on the dimension of widest spread at the median.
    std::size_t dim = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < points_.cols(); ++j) {
      double lo = points_(index_[begin], j), hi = lo;
      for (std::size_t i = begin + 1; i < end; ++i) {
        lo = std::min(lo, points_(index_[i], j));
        hi = std::max(hi, points_(index_[i], j));
      }
      if (hi - lo > best) {
        best = hi - lo;
        dim = j;
      }
    }
    if (best <= 0.0) return id;  // all points coincide

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(begin),
                     index_.begin() + static_cast<std::ptrdiff_t>(mid),
                     index_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) { return points_(a, dim) < points_(b, dim); });
    const double split = points_(index_[mid], dim);
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    Node& n = nodes_[id];
    n.leaf = false;
    n.dim = dim;
    n.split = split;
    n.left = left;
    n.right = right;
    return id;
  }

  // Lower bound on the distance to any point across the splitting plane. Uses
  // the same arithmetic as distance(), so it never exceeds a computed distance.
  double plane_bound(double diff) const noexcept {
    return norm_ == Norm::max ? std::fabs(diff) : std::sqrt(diff * diff);
  }

  void search(std::size_t id, std::span<const double> q, std::size_t self, std::size_t k,
              std::priority_queue<double>& heap) const {
    const Node& n = nodes_[id];
    if (n.leaf) {
      for (std::size_t i = n.begin; i < n.end; ++i) {
        const std::size_t p = index_[i];
        if (p == self) continue;
        const double dist = distance(q, points_.row(p), norm_);
        if (heap.size() < k) {
          heap.push(dist);
        } else if (dist < heap.top()) {
          heap.pop();
          heap.push(dist);
        }
      }
      return;
    }
    // Left subtree holds coordinates <= split, right subtree >= split.
    const double diff = q[n.dim] - n.split;
    const std::size_t near = diff < 0.0 ? n.left : n.right;
    const std::size_t far = diff < 0.0 ? n.right : n.left;
    search(near, q, self, k, heap);
    if (heap.size() < k || plane_bound(diff) <= heap.top()) search(far, q, self, k, heap);
  }

  Matrix points_;
  Norm norm_;
  std::vector<std::size_t> index_;
  std::vector<Node> nodes_;
};

}  // namespace copent
