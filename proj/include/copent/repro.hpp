#pragma once

#include <array>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "copent/dataset.hpp"
#include "copent/report.hpp"
#include "copent/select.hpp"

// Heart-disease selection experiment: attribute catalogue, reference
// selections and the harness that reruns the three measures against them.
namespace copent::repro {

// The 76 raw attributes of the UCI heart-disease databases; index + 1 is the attribute ID.
inline constexpr std::array<std::string_view, 76> kHeartAttributes = {
    "id",       "ccf",      "age",      "sex",     "painloc", "painexer", "relrest", "pncaden",
    "cp",       "trestbps", "htn",      "chol",    "smoke",   "cigs",     "years",   "fbs",
    "dm",       "famhist",  "restecg",  "ekgmo",   "ekgday",  "ekgyr",    "dig",     "prop",
    "nitr",     "pro",      "diuretic", "proto",   "thaldur", "thaltime", "met",     "thalach",
    "thalrest", "tpeakbps", "tpeakbpd", "dummy",   "trestbpd", "exang",   "xhypo",   "oldpeak",
    "slope",    "rldv5",    "rldv5e",   "ca",      "restckm", "exerckm",  "restef",  "restwm",
    "exeref",   "exerwm",   "thal",     "thalsev", "thalpul", "earlobe",  "cmo",     "cday",
    "cyr",      "num",      "lmt",      "ladprox", "laddist", "diag",     "cxmain",  "ramus",
    "om1",      "om2",      "rcaprox",  "rcadist", "lvx1",    "lvx2",     "lvx3",    "lvx4",
    "lvf",      "cathef",   "junk",     "name"};

inline constexpr const char* kResponse = "num";
inline constexpr const char* kAnchor = "fbs";

// 1-based attribute ID, or 0 if the name is not a heart-disease attribute.
inline int attribute_id(std::string_view name) {
  for (std::size_t i = 0; i < kHeartAttributes.size(); ++i)
    if (kHeartAttributes[i] == name) return static_cast<int>(i) + 1;
  return 0;
}

inline std::set<int> id_range(int lo, int hi) {
  std::set<int> s;
  for (int i = lo; i <= hi; ++i) s.insert(i);
  return s;
}

inline std::set<int> merge(std::set<int> a, const std::set<int>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

// Clinically recommended predictors (response excluded).
inline std::set<int> recommended_predictors() {
  return {3, 4, 9, 10, 12, 16, 19, 32, 38, 40, 41, 44, 51};
}

// Published selections, thresholded at the strength of fbs.
inline std::set<int> expected_selection(Measure m) {
  switch (m) {
    case Measure::ce:
      return merge({3, 4, 6, 7, 9, 12, 16, 28, 29, 30, 31, 32, 38, 40, 41, 44, 51}, id_range(59, 68));
    case Measure::dcor:
      return merge(merge({3, 4, 6, 7, 9, 12, 13, 16, 38, 40, 41, 52}, id_range(28, 33)), id_range(59, 68));
    case Measure::dhsic:
      return merge(merge({3, 4, 6, 7, 9, 12, 13, 16, 25, 38, 40, 41, 44}, id_range(29, 32)),
                   id_range(59, 68));
  }
  return {};
}

inline double jaccard(const std::set<int>& a, const std::set<int>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (int x : a) inter += b.count(x);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

inline std::size_t overlap(const std::set<int>& a, const std::set<int>& b) {
  std::size_t n = 0;
  for (int x : a) n += b.count(x);
  return n;
}

inline std::set<int> ids_of(const std::vector<std::string>& names) {
  std::set<int> s;
  for (const auto& n : names)
    if (int id = attribute_id(n)) s.insert(id);
  return s;
}

struct ReproOptions {
  std::set<std::string> missing_markers = default_missing_markers();
  // Identifier / free-text columns left out of the analysis.
  std::vector<std::string> exclude = {"id", "name"};
  EstimatorConfig config;
  bool auto_jitter = true;  // jitter 1e-10 when analysed columns have > 1% ties
  bool svg = true;
};

struct MeasureOutcome {
  Measure measure = Measure::ce;
  std::vector<std::string> selected;
  std::set<int> selected_ids;
  std::set<int> expected_ids;
  double jaccard = 0.0;
  std::size_t recommended_hits = 0;
  double threshold = 0.0;
  double seconds = 0.0;
};

struct ReproSummary {
  std::size_t rows_loaded = 0;
  std::size_t rows_complete = 0;
  std::size_t predictors = 0;
  bool jitter_auto = false;
  std::vector<MeasureOutcome> outcomes;  // ce, dcor, dhsic

  const MeasureOutcome& at(Measure m) const {
    for (const auto& o : outcomes)
      if (o.measure == m) return o;
    throw ArgumentError("no outcome for measure");
  }
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::ordered_json to_json(const ReproSummary& s) {
  nlohmann::ordered_json measures = nlohmann::ordered_json::array();
  for (const auto& o : s.outcomes)
    measures.push_back({{"measure", to_string(o.measure)},
                        {"threshold", o.threshold},
                        {"selected", o.selected},
                        {"selected_ids", o.selected_ids},
                        {"expected_ids", o.expected_ids},
                        {"jaccard_vs_expected", o.jaccard},
                        {"recommended_recall", static_cast<double>(o.recommended_hits) / 13.0},
                        {"recommended_hits", o.recommended_hits},
                        {"seconds", o.seconds}});
  return {{"schema_version", kReportSchemaVersion},
          {"rows_loaded", s.rows_loaded},
          {"rows_complete", s.rows_complete},
          {"predictors", s.predictors},
          {"jitter_auto", s.jitter_auto},
          {"recommended_ids", recommended_predictors()},
          {"measures", std::move(measures)}};
}

inline void write_markdown(const ReproSummary& s, std::ostream& out) {
  out << "# Heart-disease selection reproduction\n\n"
      << "- rows loaded: " << s.rows_loaded << "\n"
      << "- complete cases: " << s.rows_complete << "\n"
      << "- predictors: " << s.predictors << "\n"
      << "- automatic jitter: " << (s.jitter_auto ? "on" : "off") << "\n\n"
      << "| measure | selected | Jaccard vs reference | recommended recall | threshold (fbs) | seconds |\n"
      << "|---|---|---|---|---|---|\n";
  for (const auto& o : s.outcomes)
    out << "| " << to_string(o.measure) << " | " << o.selected_ids.size() << " | "
        << format_real(o.jaccard, 4) << " | " << o.recommended_hits << "/13 | "
        << format_real(o.threshold, 6) << " | " << format_real(o.seconds, 3) << " |\n";
  out << "\n";
  for (const auto& o : s.outcomes) {
    out << "## " << to_string(o.measure) << "\n\nselected IDs:";
    for (int id : o.selected_ids) out << ' ' << id;
    out << "\n\nreference IDs:";
    for (int id : o.expected_ids) out << ' ' << id;
    out << "\n\n";
  }
}

// Runs ce, dcor and dhsic selection (threshold at fbs) on the complete cases
// of a flattened heart-disease CSV and compares against the reference sets.
// Per-measure reports go to out_dir/<measure>/, summaries to out_dir/summary.{md,json}.
inline ReproSummary run_reproduction(const std::string& data_path, const std::filesystem::path& out_dir,
                                     const ReproOptions& opt = {}) {
  const DataTable raw = load_csv(data_path, opt.missing_markers, true);
  if (!raw.find(kResponse)) throw DataError("data file has no \"num\" column");
  if (!raw.find(kAnchor)) throw DataError("data file has no \"fbs\" column");

  std::vector<std::string> analysis;
  std::vector<std::string> predictors;
  for (const auto& n : raw.column_names()) {
    if (std::find(opt.exclude.begin(), opt.exclude.end(), n) != opt.exclude.end()) continue;
    analysis.push_back(n);
    if (n != kResponse) predictors.push_back(n);
  }
  const DataTable data = complete_cases(raw, analysis);

  ReproSummary s;
  s.rows_loaded = raw.rows();
  s.rows_complete = data.rows();
  s.predictors = predictors.size();

  EstimatorConfig cfg = opt.config;
  std::vector<std::string> tied;
  if (opt.auto_jitter && cfg.jitter_scale == 0.0) {
    tied = tied_columns(data, analysis);
    if (!tied.empty()) {
      cfg.jitter_scale = 1e-10;
      s.jitter_auto = true;
    }
  }

  RunManifest m;
  m.command = "reproduce";
  m.input = data_path;
  m.response = kResponse;
  m.predictors = predictors;
  m.rule = ThresholdVariable{kAnchor};
  m.config = cfg;
  m.jitter_auto = s.jitter_auto;
  m.tied_columns = tied;
  m.rows_loaded = s.rows_loaded;
  m.rows_complete = s.rows_complete;
  m.timestamp = utc_timestamp();

  for (Measure measure : {Measure::ce, Measure::dcor, Measure::dhsic}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto profile = strength_profile(data, kResponse, predictors, measure, cfg);
    const auto report = apply_rule(profile, ThresholdVariable{kAnchor});
    const auto t1 = std::chrono::steady_clock::now();

    MeasureOutcome o;
    o.measure = measure;
    o.selected = report.selected;
    o.selected_ids = ids_of(report.selected);
    o.expected_ids = expected_selection(measure);
    o.jaccard = jaccard(o.selected_ids, o.expected_ids);
    o.recommended_hits = overlap(o.selected_ids, recommended_predictors());
    o.threshold = report.threshold_value;
    o.seconds = std::chrono::duration<double>(t1 - t0).count();
    s.outcomes.push_back(o);

    m.measure = to_string(measure);
    write_selection_outputs(out_dir / to_string(measure), m, report, opt.svg);
  }

  std::filesystem::create_directories(out_dir);
  detail::open_out(out_dir / "summary.json") << to_json(s).dump(2) << '\n';
  auto md = detail::open_out(out_dir / "summary.md");
  write_markdown(s, md);
  return s;
}

}  // namespace copent::repro
