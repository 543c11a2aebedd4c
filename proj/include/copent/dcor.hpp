#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "copent/error.hpp"
#include "copent/kdtree.hpp"
#include "copent/matrix.hpp"

namespace copent {

struct DcorResult {
  double dcor = 0.0;      // clamped to [0, 1]
  double dcor_raw = 0.0;  // before clamping
  double dcov2 = 0.0;     // squared distance covariance (V-statistic)
  double dvarx = 0.0;
  double dvary = 0.0;
};

// Double-centred Euclidean distance matrix of one sample:
//   A(i,j) = a(i,j) - mean_row(i) - mean_col(j) + mean_all.
// Computing it once lets a response be reused against many predictors.
class CenteredDistances {
public:
  explicit CenteredDistances(const Matrix& x) : n_(x.rows()), a_(n_ * n_) {
    if (n_ < 2) throw ArgumentError("distance_correlation: need at least 2 samples");
    detail::require_finite(x, "distance_correlation");
    for (std::size_t i = 0; i < n_; ++i) {
      a_[i * n_ + i] = 0.0;
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double d = distance(x.row(i), x.row(j), Norm::euclidean);
        a_[i * n_ + j] = d;
        a_[j * n_ + i] = d;
      }
    }
    // distance matrices are symmetric, so row means equal column means
    std::vector<double> mean(n_, 0.0);
    double grand = 0.0;
    const double t = static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j];
      mean[i] = s / t;
      grand += s;
    }
    grand /= t * t;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a_[i * n_ + j] += grand - mean[i] - mean[j];
  }

  std::size_t size() const noexcept { return n_; }

  // Mean of the entrywise product with another centred matrix.
  double inner(const CenteredDistances& o) const {
    if (o.n_ != n_)
      throw ArgumentError("distance_correlation: samples differ in length (" + std::to_string(n_) +
                          " vs " + std::to_string(o.n_) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) s += a_[i] * o.a_[i];
    return s / (static_cast<double>(n_) * static_cast<double>(n_));
  }

private:
  std::size_t n_;
  std::vector<double> a_;
};

inline DcorResult distance_correlation(const CenteredDistances& x, const CenteredDistances& y) {
  DcorResult r;
  r.dcov2 = std::max(0.0, x.inner(y));
  r.dvarx = std::max(0.0, x.inner(x));
  r.dvary = std::max(0.0, y.inner(y));
  const double denom = std::sqrt(r.dvarx * r.dvary);
  if (denom > 0.0) {
    r.dcor_raw = std::sqrt(r.dcov2 / denom);
    r.dcor = std::clamp(r.dcor_raw, 0.0, 1.0);
  }
  return r;
}

// Sample distance correlation between x (T x p) and y (T x q), V-statistic form.
// A constant sample yields dcor = 0.
inline DcorResult distance_correlation(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows())
    throw ArgumentError("distance_correlation: samples differ in length (" +
                        std::to_string(x.rows()) + " vs " + std::to_string(y.rows()) + ")");
  return distance_correlation(CenteredDistances(x), CenteredDistances(y));
}

}  // namespace copent
