#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "copent/error.hpp"

namespace copent {

// Dense row-major T x d matrix of doubles. Rows are samples, columns are variables.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw ArgumentError("Matrix: ragged initializer list");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  // Builds a T x d matrix from d column vectors of equal length.
  static Matrix from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) return {};
    const std::size_t n = columns.front().size();
    Matrix m(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != n)
        throw ArgumentError("Matrix::from_columns: columns differ in length");
      for (std::size_t i = 0; i < n; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix column_vector(std::span<const double> v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

  std::vector<double> col(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
  }

  // Columns [first, first + count) as a new matrix.
  Matrix col_block(std::size_t first, std::size_t count) const {
    Matrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
  }

  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

namespace detail {

inline void require_finite(const Matrix& m, const char* who) {
  for (double v : m.data())
    if (!std::isfinite(v)) throw ArgumentError(std::string(who) + ": non-finite input value");
}

}  // namespace detail

}  // namespace copent
