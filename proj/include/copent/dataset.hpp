#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "copent/error.hpp"
#include "copent/matrix.hpp"

namespace copent {

// Column-labeled numeric table with a missing-value mask. Immutable once built.
//
// Missing cells hold NaN internally; value() refuses to hand them out, so the
// sentinel never reaches the estimators.
class DataTable {
public:
  DataTable(std::vector<std::string> column_names, Matrix values, std::vector<bool> missing_mask,
            std::optional<std::string> source_id = std::nullopt)
      : names_(std::move(column_names)),
        values_(std::move(values)),
        mask_(std::move(missing_mask)),
        source_id_(std::move(source_id)) {
    if (values_.rows() < 1 || values_.cols() < 1)
      throw DataError("DataTable: table must have at least one row and one column");
    if (names_.size() != values_.cols())
      throw DataError("DataTable: " + std::to_string(names_.size()) + " column names for " +
                      std::to_string(values_.cols()) + " columns");
    if (mask_.size() != values_.rows() * values_.cols())
      throw DataError("DataTable: missing mask shape differs from value shape");
    for (std::size_t i = 0; i < values_.rows(); ++i)
      for (std::size_t j = 0; j < values_.cols(); ++j)
        if (missing(i, j)) values_(i, j) = std::numeric_limits<double>::quiet_NaN();
  }

  // Convenience constructor for fully observed data.
  DataTable(std::vector<std::string> column_names, Matrix values)
      : DataTable(std::move(column_names), values,
                  std::vector<bool>(values.rows() * values.cols(), false)) {}

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  const std::vector<std::string>& column_names() const noexcept { return names_; }
  const std::optional<std::string>& source_id() const noexcept { return source_id_; }

  bool missing(std::size_t r, std::size_t c) const noexcept { return mask_[r * cols() + c]; }

  double value(std::size_t r, std::size_t c) const {
    if (missing(r, c))
      throw DataError("cell (" + std::to_string(r + 1) + ", " + names_[c] +
                      ") is missing; run complete_cases first");
    return values_(r, c);
  }

  std::optional<std::size_t> find(std::string_view name) const noexcept {
    for (std::size_t j = 0; j < names_.size(); ++j)
      if (names_[j] == name) return j;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view name) const {
    if (auto j = find(name)) return *j;
    throw DataError("unknown column \"" + std::string(name) + "\"");
  }

  bool has_missing(std::size_t c) const noexcept {
    for (std::size_t i = 0; i < rows(); ++i)
      if (missing(i, c)) return true;
    return false;
  }

  std::size_t missing_count() const noexcept {
    std::size_t n = 0;
    for (bool m : mask_) n += m;
    return n;
  }

  bool operator==(const DataTable& o) const {
    if (names_ != o.names_ || mask_ != o.mask_ || rows() != o.rows() || cols() != o.cols())
      return false;
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        if (!missing(i, j) && values_(i, j) != o.values_(i, j)) return false;
    return true;
  }

private:
  std::vector<std::string> names_;
  Matrix values_;
  std::vector<bool> mask_;
  std::optional<std::string> source_id_;
};

inline const std::set<std::string>& default_missing_markers() {
  static const std::set<std::string> markers{"?", "", "NA"};
  return markers;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Splits one CSV record, honouring RFC-4180 double-quote escaping. Returns
// false if the line ends inside an open quote (the caller appends the next line).
inline bool split_csv_record(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return !quoted;
}

inline std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

}  // namespace detail

// Parses CSV text from a stream. Cells whose trimmed text matches a missing
// marker are masked. Fully empty lines are skipped.
inline DataTable read_csv(std::istream& in,
                          const std::set<std::string>& missing_markers = default_missing_markers(),
                          bool has_header = true, std::optional<std::string> source_id = {}) {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<bool> mask;
  std::vector<std::string> fields;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = has_header;

  std::string line;
  std::string record;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    record = record.empty() ? line : record + "\n" + line;
    if (!detail::split_csv_record(record, fields)) continue;
    record.clear();
    if (fields.size() == 1 && detail::trim(fields[0]).empty() && line.empty()) continue;

    if (header_pending) {
      for (auto& f : fields) names.emplace_back(detail::trim(f));
      width = names.size();
      header_pending = false;
      continue;
    }
    if (width == 0) {
      width = fields.size();
      for (std::size_t j = 0; j < width; ++j) names.push_back("c" + std::to_string(j + 1));
    }
    ++rows;
    if (fields.size() != width)
      throw DataError("ragged row " + std::to_string(rows) + " (line " + std::to_string(line_no) +
                      "): expected " + std::to_string(width) + " fields, found " +
                      std::to_string(fields.size()));
    for (std::size_t j = 0; j < width; ++j) {
      const std::string key(detail::trim(fields[j]));
      if (missing_markers.count(key)) {
        values.push_back(0.0);
        mask.push_back(true);
        continue;
      }
      const auto v = detail::parse_real(key);
      if (!v)
        throw DataError("row " + std::to_string(rows) + " (line " + std::to_string(line_no) +
                        "), column \"" + names[j] + "\": cannot parse \"" + fields[j] +
                        "\" as a number");
      values.push_back(*v);
      mask.push_back(false);
    }
  }
  if (!record.empty()) throw DataError("unterminated quoted field at end of input");
  if (rows == 0) throw DataError("CSV input contains no data rows");

  Matrix m(rows, width);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = values[i * width + j];
  return DataTable(std::move(names), std::move(m), std::move(mask), std::move(source_id));
}

inline DataTable load_csv(const std::string& path,
                          const std::set<std::string>& missing_markers = default_missing_markers(),
                          bool has_header = true) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open \"" + path + "\" for reading");
  return read_csv(in, missing_markers, has_header, path);
}

// Writes the table as CSV with a header row. Values use 17 significant digits
// so every double round-trips; missing cells are written as NA.
inline void write_csv(const DataTable& table, std::ostream& out) {
  const auto& names = table.column_names();
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (j) out << ',';
      if (table.missing(i, j)) {
        out << "NA";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", table.value(i, j));
        out << buf;
      }
    }
    out << '\n';
  }
}

// Restricts the table to `columns` (in the given order) and drops every row
// with a masked cell among them. Surviving rows keep their relative order.
inline DataTable complete_cases(const DataTable& table, const std::vector<std::string>& columns) {
  std::vector<std::size_t> idx;
  idx.reserve(columns.size());
  for (const auto& c : columns) idx.push_back(table.index_of(c));
  if (idx.empty()) throw DataError("complete_cases: no columns requested");

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    bool ok = true;
    for (auto j : idx) ok = ok && !table.missing(i, j);
    if (ok) keep.push_back(i);
  }
  if (keep.empty()) throw DataError("complete_cases: no rows without missing values remain");

  Matrix m(keep.size(), idx.size());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = table.value(keep[r], idx[c]);
  return DataTable(columns, std::move(m), std::vector<bool>(keep.size() * idx.size(), false),
                   table.source_id());
}

// All columns, in table order.
inline DataTable complete_cases(const DataTable& table) {
  return complete_cases(table, table.column_names());
}

inline std::vector<double> column(const DataTable& table, std::string_view name) {
  const auto j = table.index_of(name);
  std::vector<double> out(table.rows());
  for (std::size_t i = 0; i < table.rows(); ++i) {
    if (table.missing(i, j))
      throw DataError("column \"" + std::string(name) + "\" has missing values at row " +
                      std::to_string(i + 1) + "; run complete_cases first");
    out[i] = table.value(i, j);
  }
  return out;
}

// T x names.size() matrix of the named columns (no masked cells allowed).
inline Matrix columns_matrix(const DataTable& table, const std::vector<std::string>& names) {
  std::vector<std::vector<double>> cols;
  cols.reserve(names.size());
  for (const auto& n : names) cols.push_back(column(table, n));
  return Matrix::from_columns(cols);
}

}  // namespace copent
