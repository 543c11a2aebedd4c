#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "copent/error.hpp"
#include "copent/kdtree.hpp"
#include "copent/matrix.hpp"

namespace copent {

struct MedianBandwidth {};
struct FixedBandwidths {
  std::vector<double> values;  // one per variable
};
using BandwidthRule = std::variant<MedianBandwidth, FixedBandwidths>;

struct DhsicResult {
  double dhsic = 0.0;
  std::vector<double> bandwidths;
  std::size_t variables = 0;
};

// Median of the positive pairwise Euclidean distances; 1 if every pair coincides.
inline double median_bandwidth(const Matrix& x) {
  const std::size_t n = x.rows();
  if (n < 2) throw ArgumentError("median_bandwidth: need at least 2 samples");
  detail::require_finite(x, "median_bandwidth");
  std::vector<double> d;
  d.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = distance(x.row(i), x.row(j), Norm::euclidean);
      if (v > 0.0) d.push_back(v);
    }
  if (d.empty()) return 1.0;
  const std::size_t mid = d.size() / 2;
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid), d.end());
  const double upper = d[mid];
  if (d.size() % 2 == 1) return upper;
  const double lower = *std::max_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Gaussian Gram matrix K(i,j) = exp(-|x_i - x_j|^2 / (2 h^2)), row-major.
class GaussianGram {
public:
  GaussianGram(const Matrix& x, double bandwidth) : n_(x.rows()), h_(bandwidth), k_(n_ * n_) {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
      throw ArgumentError("dhsic: bandwidth must be positive, got " + std::to_string(bandwidth));
    detail::require_finite(x, "dhsic");
    const double scale = 1.0 / (2.0 * h_ * h_);
    for (std::size_t i = 0; i < n_; ++i) {
      k_[i * n_ + i] = 1.0;
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double d = distance(x.row(i), x.row(j), Norm::euclidean);
        const double v = std::exp(-d * d * scale);
        k_[i * n_ + j] = v;
        k_[j * n_ + i] = v;
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  double bandwidth() const noexcept { return h_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return k_[i * n_ + j]; }

private:
  std::size_t n_;
  double h_;
  std::vector<double> k_;
};

// Plug-in (V-statistic) dHSIC from precomputed Gram matrices:
//   (1/T^2) sum_ij prod_m K_m(i,j) + prod_m mean(K_m) - (2/T) sum_i prod_m rowmean(K_m, i)
inline double dhsic_from_grams(const std::vector<const GaussianGram*>& grams) {
  if (grams.size() < 2) throw ArgumentError("dhsic: needs at least 2 variables");
  const std::size_t n = grams.front()->size();
  for (const auto* g : grams)
    if (g->size() != n) throw ArgumentError("dhsic: variables differ in sample count");
  const double t = static_cast<double>(n);

  double joint = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double p = 1.0;
      for (const auto* g : grams) p *= (*g)(i, j);
      joint += p;
    }
  joint /= t * t;

  double product_of_means = 1.0;
  std::vector<double> cross(n, 1.0);
  for (const auto* g : grams) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += (*g)(i, j);
      total += row;
      cross[i] *= row / t;
    }
    product_of_means *= total / (t * t);
  }
  double mixed = 0.0;
  for (double c : cross) mixed += c;
  return joint + product_of_means - 2.0 * mixed / t;
}

// dHSIC of d >= 2 variables, each given as a T x p_m matrix, with Gaussian kernels.
inline DhsicResult dhsic_estimate(const std::vector<Matrix>& variables,
                                  const BandwidthRule& rule = MedianBandwidth{}) {
  if (variables.size() < 2)
    throw ArgumentError("dhsic: needs at least 2 variables, got " + std::to_string(variables.size()));
  const std::size_t n = variables.front().rows();
  if (n < 2) throw ArgumentError("dhsic: need at least 2 samples");
  for (const auto& v : variables)
    if (v.rows() != n)
      throw ArgumentError("dhsic: variables differ in sample count (" + std::to_string(n) + " vs " +
                          std::to_string(v.rows()) + ")");

  DhsicResult r;
  r.variables = variables.size();
  if (const auto* fixed = std::get_if<FixedBandwidths>(&rule)) {
    if (fixed->values.size() != variables.size())
      throw ArgumentError("dhsic: " + std::to_string(fixed->values.size()) +
                          " fixed bandwidths for " + std::to_string(variables.size()) + " variables");
    for (double h : fixed->values)
      if (!(h > 0.0)) throw ArgumentError("dhsic: fixed bandwidths must be positive");
    r.bandwidths = fixed->values;
  } else {
    for (const auto& v : variables) r.bandwidths.push_back(median_bandwidth(v));
  }

  std::vector<GaussianGram> grams;
  grams.reserve(variables.size());
  for (std::size_t m = 0; m < variables.size(); ++m) grams.emplace_back(variables[m], r.bandwidths[m]);
  std::vector<const GaussianGram*> ptrs;
  for (const auto& g : grams) ptrs.push_back(&g);
  r.dhsic = dhsic_from_grams(ptrs);
  return r;
}

}  // namespace copent
