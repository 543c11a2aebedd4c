#pragma once

// Test-only reference implementations. Each follows the textbook definition
// directly (double loops, full sorts) and shares no code path with the
// library beyond the Matrix container.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "copent/matrix.hpp"

namespace oracle {

using copent::Matrix;

inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline Matrix uniform_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  Matrix m(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = uniform01(g);
  return m;
}

// Independent standard normals (n x d).
inline Matrix normal_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> z;
  Matrix m(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = z(g);
  return m;
}

// Bivariate normal with unit variances and correlation rho.
inline Matrix bivariate_normal(std::size_t n, double rho, std::uint64_t seed) {
  Matrix z = normal_matrix(n, 2, seed);
  const double c = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) z(i, 1) = rho * z(i, 0) + c * z(i, 1);
  return z;
}

inline double gaussian_mi(double rho) { return -0.5 * std::log(1.0 - rho * rho); }

// u(t,i) = (1/T) sum_s [x(s,i) <= x(t,i)], literally.
inline Matrix literal_rank(const Matrix& x) {
  const std::size_t n = x.rows();
  Matrix u(n, x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t count = 0;
      for (std::size_t s = 0; s < n; ++s) count += x(s, j) <= x(t, j) ? 1 : 0;
      u(t, j) = static_cast<double>(count) / static_cast<double>(n);
    }
  return u;
}

inline double max_norm(const Matrix& x, std::size_t a, std::size_t b) {
  double m = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const double v = std::fabs(x(a, j) - x(b, j));
    if (v > m) m = v;
  }
  return m;
}

inline double euclid(const Matrix& x, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const double diff = x(a, j) - x(b, j);
    s += diff * diff;
  }
  return std::sqrt(s);
}

// All pairwise distances, full sort, pick the k-th.
inline std::vector<double> brute_kth(const Matrix& x, std::size_t k, bool use_max) {
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < x.rows(); ++j)
      if (j != i) d.push_back(use_max ? max_norm(x, i, j) : euclid(x, i, j));
    std::sort(d.begin(), d.end());
    out[i] = d[k - 1];
  }
  return out;
}

// Double-centred distance matrix with explicit row, column and grand means.
inline std::vector<std::vector<double>> centred(const Matrix& x) {
  const std::size_t n = x.rows();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = euclid(x, i, j);
  std::vector<double> rmean(n, 0.0), cmean(n, 0.0);
  double g = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rmean[i] += a[i][j] / n;
      cmean[j] += a[i][j] / n;
      g += a[i][j] / (static_cast<double>(n) * n);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = a[i][j] - rmean[i] - cmean[j] + g;
  return a;
}

inline double mean_product(const std::vector<std::vector<double>>& a,
                           const std::vector<std::vector<double>>& b) {
  double s = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += a[i][j] * b[i][j];
  return s / (static_cast<double>(n) * n);
}

inline double literal_dcor(const Matrix& x, const Matrix& y) {
  const auto a = centred(x);
  const auto b = centred(y);
  const double v = mean_product(a, a) * mean_product(b, b);
  if (v <= 0.0) return 0.0;
  return std::sqrt(mean_product(a, b) / std::sqrt(v));
}

inline std::vector<std::vector<double>> gaussian_gram(const Matrix& x, double h) {
  const std::size_t n = x.rows();
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = euclid(x, i, j);
      k[i][j] = std::exp(-(d * d) / (2.0 * h * h));
    }
  return k;
}

// Three-term plug-in dHSIC written out term by term.
inline double literal_dhsic(const std::vector<Matrix>& vars, const std::vector<double>& h) {
  const std::size_t n = vars.front().rows();
  const std::size_t d = vars.size();
  std::vector<std::vector<std::vector<double>>> k;
  for (std::size_t m = 0; m < d; ++m) k.push_back(gaussian_gram(vars[m], h[m]));
  const double t = static_cast<double>(n);

  double term1 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double p = 1.0;
      for (std::size_t m = 0; m < d; ++m) p *= k[m][i][j];
      term1 += p / (t * t);
    }
  double term2 = 1.0;
  for (std::size_t m = 0; m < d; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += k[m][i][j] / (t * t);
    term2 *= s;
  }
  double term3 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t m = 0; m < d; ++m) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += k[m][i][j] / t;
      p *= s;
    }
    term3 += p;
  }
  term3 *= 2.0 / t;
  return term1 + term2 - term3;
}

// Empirical quantile: the ceil(q * n)-th smallest value.
inline double upper_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::max<std::size_t>(idx, 1) - 1];
}

}  // namespace oracle
