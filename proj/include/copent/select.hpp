#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "copent/copent.hpp"
#include "copent/dataset.hpp"
#include "copent/dcor.hpp"
#include "copent/dhsic.hpp"
#include "copent/error.hpp"

namespace copent {

enum class Measure { ce, dcor, dhsic };

inline const char* to_string(Measure m) {
  switch (m) {
    case Measure::ce: return "ce";
    case Measure::dcor: return "dcor";
    case Measure::dhsic: return "dhsic";
  }
  return "?";
}

inline std::optional<Measure> parse_measure(std::string_view s) {
  if (s == "ce") return Measure::ce;
  if (s == "dcor") return Measure::dcor;
  if (s == "dhsic") return Measure::dhsic;
  return std::nullopt;
}

struct StrengthEntry {
  std::string name;
  double strength = 0.0;
};

// Dependence strength of each predictor against one response under one measure.
// For ce the strength is the estimated mutual information, which may be
// slightly negative from estimator noise.
struct StrengthProfile {
  Measure measure = Measure::ce;
  std::string response;
  std::vector<StrengthEntry> entries;  // input column order
  EstimatorConfig config;
  std::size_t samples = 0;
  std::size_t duplicate_warnings = 0;  // ce only: floored zero distances over all pairs

  const StrengthEntry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

struct ThresholdVariable {
  std::string name;
};
struct MinStrength {
  double value = 0.0;
};
struct TopK {
  std::size_t k = 1;
};
using SelectionRule = std::variant<ThresholdVariable, MinStrength, TopK>;

struct SelectionReport {
  StrengthProfile profile;
  SelectionRule rule;
  std::vector<std::string> selected;  // descending strength, ties in input order
  double threshold_value = 0.0;
};

// Bivariate strength of every predictor against the response. The table must
// already be restricted to complete cases over these columns.
inline StrengthProfile strength_profile(const DataTable& table, const std::string& response,
                                        const std::vector<std::string>& predictors, Measure measure,
                                        const EstimatorConfig& config = {}) {
  if (predictors.empty()) throw ArgumentError("strength_profile: no predictors given");
  if (std::find(predictors.begin(), predictors.end(), response) != predictors.end())
    throw ArgumentError("strength_profile: response \"" + response + "\" is listed among the predictors");
  for (std::size_t i = 0; i < predictors.size(); ++i)
    for (std::size_t j = i + 1; j < predictors.size(); ++j)
      if (predictors[i] == predictors[j])
        throw ArgumentError("strength_profile: predictor \"" + predictors[i] + "\" listed twice");

  StrengthProfile p;
  p.measure = measure;
  p.response = response;
  p.config = config;
  p.samples = table.rows();
  const auto y = column(table, response);
  const Matrix ym = Matrix::column_vector(y);

  switch (measure) {
    case Measure::ce:
      for (const auto& name : predictors) {
        const auto r = copula_entropy(Matrix::from_columns({column(table, name), y}), config);
        p.entries.push_back({name, r.mutual_information});
        p.duplicate_warnings += r.duplicate_warnings;
      }
      break;
    case Measure::dcor: {
      const CenteredDistances cy(ym);
      for (const auto& name : predictors) {
        const CenteredDistances cx(Matrix::column_vector(column(table, name)));
        p.entries.push_back({name, distance_correlation(cx, cy).dcor});
      }
      break;
    }
    case Measure::dhsic: {
      const GaussianGram gy(ym, median_bandwidth(ym));
      for (const auto& name : predictors) {
        const Matrix xm = Matrix::column_vector(column(table, name));
        const GaussianGram gx(xm, median_bandwidth(xm));
        p.entries.push_back({name, dhsic_from_grams({&gx, &gy})});
      }
      break;
    }
  }
  return p;
}

inline SelectionReport apply_rule(const StrengthProfile& profile, const SelectionRule& rule) {
  SelectionReport r{profile, rule, {}, 0.0};
  std::vector<StrengthEntry> sorted = profile.entries;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const StrengthEntry& a, const StrengthEntry& b) { return a.strength > b.strength; });

  std::size_t cap = sorted.size();
  if (const auto* tv = std::get_if<ThresholdVariable>(&rule)) {
    const auto* anchor = profile.find(tv->name);
    if (!anchor)
      throw ArgumentError("threshold variable \"" + tv->name + "\" is not among the predictors");
    r.threshold_value = anchor->strength;
  } else if (const auto* ms = std::get_if<MinStrength>(&rule)) {
    r.threshold_value = ms->value;
  } else {
    const auto k = std::get<TopK>(rule).k;
    if (k < 1 || k > sorted.size())
      throw ArgumentError("top-k: k = " + std::to_string(k) + " must lie in [1, " +
                          std::to_string(sorted.size()) + "]");
    r.threshold_value = sorted[k - 1].strength;
    cap = k;
  }
  for (const auto& e : sorted) {
    if (r.selected.size() == cap || !(e.strength >= r.threshold_value)) break;
    r.selected.push_back(e.name);
  }
  return r;
}

// Columns whose share of repeated values exceeds `max_tied`.
inline std::vector<std::string> tied_columns(const DataTable& table,
                                             const std::vector<std::string>& names,
                                             double max_tied = 0.01) {
  std::vector<std::string> out;
  for (const auto& n : names)
    if (tied_fraction(column(table, n)) > max_tied) out.push_back(n);
  return out;
}

}  // namespace copent
