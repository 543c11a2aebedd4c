#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "copent/error.hpp"
#include "copent/select.hpp"

namespace copent {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

// Everything needed to rerun a command and get the same report back.
struct RunManifest {
  std::string command;
  std::string input;
  std::string response;
  std::vector<std::string> predictors;
  std::string measure;  // "ce" | "dcor" | "dhsic" | "all"
  SelectionRule rule;
  EstimatorConfig config;
  bool jitter_auto = false;
  std::vector<std::string> tied_columns;
  std::size_t rows_loaded = 0;
  std::size_t rows_complete = 0;
  std::string timestamp;  // kept out of report.json so reruns compare byte-equal
};

inline nlohmann::ordered_json to_json(const EstimatorConfig& c) {
  return {{"k", c.k}, {"norm", to_string(c.norm)}, {"jitter_scale", c.jitter_scale}, {"seed", c.seed}};
}

inline nlohmann::ordered_json to_json(const SelectionRule& rule) {
  if (const auto* tv = std::get_if<ThresholdVariable>(&rule))
    return {{"type", "threshold_variable"}, {"variable", tv->name}};
  if (const auto* ms = std::get_if<MinStrength>(&rule))
    return {{"type", "min_strength"}, {"value", ms->value}};
  return {{"type", "top_k"}, {"k", std::get<TopK>(rule).k}};
}

inline nlohmann::ordered_json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"tool_version", kToolVersion},
          {"input", m.input},
          {"response", m.response},
          {"predictors", m.predictors},
          {"measure", m.measure},
          {"rule", to_json(m.rule)},
          {"config", to_json(m.config)},
          {"seed", m.config.seed},
          {"jitter_auto", m.jitter_auto},
          {"tied_columns", m.tied_columns},
          {"rows_loaded", m.rows_loaded},
          {"rows_complete", m.rows_complete}};
}

inline nlohmann::ordered_json to_json(const StrengthProfile& p) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : p.entries) entries.push_back({{"variable", e.name}, {"strength", e.strength}});
  return {{"measure", to_string(p.measure)},
          {"response", p.response},
          {"samples", p.samples},
          {"config", to_json(p.config)},
          {"duplicate_warnings", p.duplicate_warnings},
          {"entries", std::move(entries)}};
}

inline nlohmann::ordered_json to_json(const SelectionReport& r) {
  return {{"rule", to_json(r.rule)}, {"threshold_value", r.threshold_value}, {"selected", r.selected}};
}

// report.json body: schema version, manifest, profile and selection.
inline nlohmann::ordered_json report_json(const RunManifest& m, const SelectionReport& r) {
  return {{"schema_version", kReportSchemaVersion},
          {"manifest", to_json(m)},
          {"profile", to_json(r.profile)},
          {"selection", to_json(r)}};
}

inline std::string format_real(double v, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline bool is_selected(const SelectionReport& r, const std::string& name) {
  return std::find(r.selected.begin(), r.selected.end(), name) != r.selected.end();
}

// variable,strength,selected with one row per predictor in input order.
inline void write_strengths_csv(const SelectionReport& r, std::ostream& out) {
  out << "variable,strength,selected\n";
  for (const auto& e : r.profile.entries)
    out << e.name << ',' << format_real(e.strength) << ',' << (is_selected(r, e.name) ? 1 : 0) << '\n';
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '&': o += "&amp;"; break;
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

}  // namespace detail

// Static SVG 1.1 horizontal bar chart: bars sorted by descending strength,
// selected bars filled dark, threshold drawn as a dashed vertical line.
inline void write_svg(const SelectionReport& r, std::ostream& out) {
  std::vector<StrengthEntry> bars = r.profile.entries;
  std::stable_sort(bars.begin(), bars.end(),
                   [](const StrengthEntry& a, const StrengthEntry& b) { return a.strength > b.strength; });

  const double label_w = 150, plot_w = 560, bar_h = 16, gap = 4, top = 40, right_pad = 70;
  const double width = label_w + plot_w + right_pad;
  const double height = top + static_cast<double>(bars.size()) * (bar_h + gap) + 30;

  double lo = 0.0, hi = 0.0;
  for (const auto& b : bars) {
    lo = std::min(lo, b.strength);
    hi = std::max(hi, b.strength);
  }
  if (std::isfinite(r.threshold_value)) {
    lo = std::min(lo, r.threshold_value);
    hi = std::max(hi, r.threshold_value);
  }
  if (hi - lo <= 0.0) hi = lo + 1.0;
  const auto xpos = [&](double v) { return label_w + (v - lo) / (hi - lo) * plot_w; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
      << "<text x=\"" << label_w << "\" y=\"20\" font-size=\"14\">"
      << detail::xml_escape(std::string(to_string(r.profile.measure)) + " strength vs " + r.profile.response)
      << " (" << r.selected.size() << " of " << bars.size() << " selected)</text>\n";

  const double zero = xpos(0.0);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& b = bars[i];
    const double y = top + static_cast<double>(i) * (bar_h + gap);
    const double x0 = std::min(zero, xpos(b.strength));
    const double w = std::fabs(xpos(b.strength) - zero);
    const bool sel = is_selected(r, b.name);
    out << "<text x=\"" << label_w - 6 << "\" y=\"" << y + bar_h - 4 << "\" text-anchor=\"end\">"
        << detail::xml_escape(b.name) << "</text>\n"
        << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << bar_h
        << "\" fill=\"" << (sel ? "#1f4e9c" : "#b8b8b8") << "\" class=\""
        << (sel ? "selected" : "unselected") << "\"/>\n"
        << "<text x=\"" << std::max(zero, xpos(b.strength)) + 4 << "\" y=\"" << y + bar_h - 4 << "\">"
        << format_real(b.strength, 4) << "</text>\n";
  }
  const double bottom = top + static_cast<double>(bars.size()) * (bar_h + gap);
  out << "<line x1=\"" << zero << "\" y1=\"" << top - 4 << "\" x2=\"" << zero << "\" y2=\"" << bottom
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  if (std::isfinite(r.threshold_value)) {
    const double tx = xpos(r.threshold_value);
    out << "<line x1=\"" << tx << "\" y1=\"" << top - 4 << "\" x2=\"" << tx << "\" y2=\"" << bottom
        << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"4,3\" class=\"threshold\"/>\n"
        << "<text x=\"" << tx + 3 << "\" y=\"" << bottom + 14 << "\" fill=\"#c0392b\">threshold "
        << format_real(r.threshold_value, 4) << "</text>\n";
  }
  out << "</svg>\n";
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IOError("cannot open \"" + p.string() + "\" for writing");
  return f;
}

}  // namespace detail

// Writes report.json, strengths.csv, timestamp.txt and optionally strengths.svg into `dir`.
inline void write_selection_outputs(const std::filesystem::path& dir, const RunManifest& m,
                                    const SelectionReport& r, bool svg) {
  std::filesystem::create_directories(dir);
  detail::open_out(dir / "report.json") << report_json(m, r).dump(2) << '\n';
  auto csv = detail::open_out(dir / "strengths.csv");
  write_strengths_csv(r, csv);
  detail::open_out(dir / "timestamp.txt") << m.timestamp << '\n';
  if (svg) {
    auto s = detail::open_out(dir / "strengths.svg");
    write_svg(r, s);
  }
}

}  // namespace copent
