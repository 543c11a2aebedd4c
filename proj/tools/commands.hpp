#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "copent/all.hpp"

namespace copent::cli {

// Bad flags or flag combinations; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = copent::detail::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

struct DataFlags {
  std::string input;
  std::vector<std::string> extra_na;
  bool no_header = false;

  void add(CLI::App* app) {
    app->add_option("--input", input, "CSV file")->required();
    app->add_option("--na", extra_na, "Extra missing-value marker (repeatable), e.g. --na -9");
    app->add_flag("--no-header", no_header, "First row is data; columns are named c1..cN");
  }

  DataTable load() const {
    auto markers = default_missing_markers();
    markers.insert(extra_na.begin(), extra_na.end());
    return load_csv(input, markers, !no_header);
  }
};

struct EstimatorFlags {
  int k = 3;
  std::string norm = "max";
  double jitter = 0.0;
  std::uint64_t seed = 0;
  CLI::Option* jitter_opt = nullptr;

  void add(CLI::App* app) {
    app->add_option("--k", k, "Neighbour count for the kNN entropy estimator")->capture_default_str();
    app->add_option("--norm", norm, "Distance for kNN search")
        ->check(CLI::IsMember({"max", "euclidean"}))
        ->capture_default_str();
    jitter_opt = app->add_option("--jitter", jitter,
                                 "Uniform jitter half-width added before ranking (default: "
                                 "1e-10 if any column has >1% tied values, else 0)");
    app->add_option("--seed", seed, "Seed for jitter")->capture_default_str();
  }

  bool jitter_given() const { return jitter_opt && jitter_opt->count() > 0; }

  // Resolves the config; with no explicit --jitter, ties in `cols` turn jitter on.
  EstimatorConfig resolve(const DataTable& table, const std::vector<std::string>& cols,
                          std::vector<std::string>* tied_out, bool* auto_on) const {
    if (k < 1) throw UsageError("--k must be a positive integer");
    if (jitter_given() && !(jitter >= 0.0)) throw UsageError("--jitter must be nonnegative");
    EstimatorConfig c;
    c.k = k;
    c.norm = norm == "euclidean" ? Norm::euclidean : Norm::max;
    c.seed = seed;
    c.jitter_scale = jitter_given() ? jitter : 0.0;
    if (auto_on) *auto_on = false;
    if (!jitter_given()) {
      auto tied = tied_columns(table, cols);
      if (!tied.empty()) {
        c.jitter_scale = 1e-10;
        if (auto_on) *auto_on = true;
      }
      if (tied_out) *tied_out = std::move(tied);
    }
    return c;
  }
};

struct RuleFlags {
  std::string threshold_var;
  double min_strength = 0.0;
  std::size_t top = 0;
  CLI::Option* tv = nullptr;
  CLI::Option* ms = nullptr;
  CLI::Option* tk = nullptr;

  void add(CLI::App* app) {
    tv = app->add_option("--threshold-var", threshold_var,
                         "Select variables at least as strong as this one (inclusive)");
    ms = app->add_option("--min-strength", min_strength, "Select variables with strength >= value");
    tk = app->add_option("--top", top, "Select the N strongest variables");
  }

  SelectionRule resolve(std::size_t n_predictors) const {
    const int given = static_cast<int>(tv->count() > 0) + static_cast<int>(ms->count() > 0) +
                      static_cast<int>(tk->count() > 0);
    if (given != 1)
      throw UsageError("exactly one of --threshold-var, --min-strength, --top is required");
    if (tv->count()) return ThresholdVariable{threshold_var};
    if (ms->count()) return MinStrength{min_strength};
    if (top < 1 || top > n_predictors)
      throw UsageError("--top must lie in [1, " + std::to_string(n_predictors) + "]");
    return TopK{top};
  }
};

struct PredictorFlags {
  std::string response;
  std::string predictors;
  std::string exclude;

  void add(CLI::App* app) {
    app->add_option("--response", response, "Response column")->required();
    app->add_option("--predictors", predictors,
                    "Comma-separated predictor columns (default: every non-response column)");
    app->add_option("--exclude", exclude, "Comma-separated columns to drop from the default predictor set");
  }

  std::vector<std::string> resolve(const DataTable& table) const {
    std::vector<std::string> out;
    if (!predictors.empty()) {
      out = split_list(predictors);
      if (std::find(out.begin(), out.end(), response) != out.end())
        throw UsageError("response \"" + response + "\" cannot also be a predictor");
    } else {
      const auto ex = split_list(exclude);
      for (const auto& n : table.column_names())
        if (n != response && std::find(ex.begin(), ex.end(), n) == ex.end()) out.push_back(n);
    }
    if (out.empty()) throw UsageError("no predictors left after excluding the response");
    return out;
  }
};

inline std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// Loads, checks columns, and applies complete cases over response + predictors.
struct PreparedData {
  DataTable table;
  std::size_t rows_loaded;
  std::vector<std::string> predictors;
};

inline PreparedData prepare(const DataFlags& data, const PredictorFlags& pf) {
  const DataTable raw = data.load();
  raw.index_of(pf.response);
  auto preds = pf.resolve(raw);
  std::vector<std::string> cols{pf.response};
  cols.insert(cols.end(), preds.begin(), preds.end());
  return {complete_cases(raw, cols), raw.rows(), std::move(preds)};
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Copula-entropy dependence measures and variable selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate one dependence measure on chosen columns");
  DataFlags est_data;
  EstimatorFlags est_cfg;
  std::string est_cols, est_measure;
  bool est_complete = false;
  est_data.add(est);
  est_cfg.add(est);
  est->add_option("--cols", est_cols, "Comma-separated columns A,B[,C...]")->required();
  est->add_option("--measure", est_measure, "ce | dcor | dhsic")
      ->required()
      ->check(CLI::IsMember({"ce", "dcor", "dhsic"}));
  est->add_flag("--complete-cases", est_complete, "Drop rows with missing values in the chosen columns");

  // select
  auto* sel = app.add_subcommand("select", "Rank predictors against a response and select");
  DataFlags sel_data;
  EstimatorFlags sel_cfg;
  RuleFlags sel_rule;
  PredictorFlags sel_pred;
  std::string sel_measure, sel_out = ".";
  bool sel_svg = false;
  sel_data.add(sel);
  sel_cfg.add(sel);
  sel_rule.add(sel);
  sel_pred.add(sel);
  sel->add_option("--measure", sel_measure, "ce | dcor | dhsic")
      ->required()
      ->check(CLI::IsMember({"ce", "dcor", "dhsic"}));
  sel->add_option("--out", sel_out, "Output directory")->capture_default_str();
  sel->add_flag("--svg", sel_svg, "Also write strengths.svg");

  // compare
  auto* cmp = app.add_subcommand("compare", "Run ce, dcor and dhsic with one shared rule");
  DataFlags cmp_data;
  EstimatorFlags cmp_cfg;
  RuleFlags cmp_rule;
  PredictorFlags cmp_pred;
  std::string cmp_out = ".";
  cmp_data.add(cmp);
  cmp_cfg.add(cmp);
  cmp_rule.add(cmp);
  cmp_pred.add(cmp);
  cmp->add_option("--out", cmp_out, "Output directory")->capture_default_str();

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Heart-disease selection experiment against the reference sets");
  std::string rep_input, rep_out = "repro_out", rep_exclude = "id,name";
  std::vector<std::string> rep_na;
  EstimatorFlags rep_cfg;
  rep->add_option("--input", rep_input, "Flattened heart-disease CSV (76 named columns)")->required();
  rep->add_option("--out", rep_out, "Output directory")->capture_default_str();
  rep->add_option("--na", rep_na, "Extra missing-value marker (repeatable)");
  rep->add_option("--exclude", rep_exclude, "Columns left out of the analysis")->capture_default_str();
  rep_cfg.add(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*est) {
      const auto cols = split_list(est_cols);
      const auto measure = *parse_measure(est_measure);
      if (cols.size() < 2) throw UsageError(est_measure + " requires at least 2 columns");
      DataTable table = est_data.load();
      for (const auto& c : cols) table.index_of(c);
      if (est_complete) table = complete_cases(table, cols);
      const Matrix x = columns_matrix(table, cols);
      char buf[64];
      if (measure == Measure::ce) {
        bool auto_on = false;
        const auto cfg = est_cfg.resolve(table, cols, nullptr, &auto_on);
        if (auto_on) err << "note: tied values detected; jitter 1e-10 enabled\n";
        const auto r = copula_entropy(x, cfg);
        std::snprintf(buf, sizeof buf, "%.12g", r.copula_entropy);
        out << "copula_entropy " << buf << '\n';
        std::snprintf(buf, sizeof buf, "%.12g", r.mutual_information);
        out << "mutual_information " << buf << '\n';
        if (r.duplicate_warnings)
          err << "warning: " << r.duplicate_warnings << " zero neighbour distances floored\n";
      } else if (measure == Measure::dcor) {
        // first column against the remaining ones
        const auto r = distance_correlation(x.col_block(0, 1), x.col_block(1, x.cols() - 1));
        std::snprintf(buf, sizeof buf, "%.12g", r.dcor);
        out << "dcor " << buf << '\n';
      } else {
        std::vector<Matrix> vars;
        for (std::size_t j = 0; j < x.cols(); ++j) vars.push_back(x.col_block(j, 1));
        const auto r = dhsic_estimate(vars);
        std::snprintf(buf, sizeof buf, "%.12g", r.dhsic);
        out << "dhsic " << buf << '\n';
      }
      return kExitOk;
    }

    if (*sel) {
      const auto measure = *parse_measure(sel_measure);
      auto prep = prepare(sel_data, sel_pred);
      const auto rule = sel_rule.resolve(prep.predictors.size());
      std::vector<std::string> cols{sel_pred.response};
      cols.insert(cols.end(), prep.predictors.begin(), prep.predictors.end());

      RunManifest m;
      m.command = "select";
      m.input = sel_data.input;
      m.response = sel_pred.response;
      m.predictors = prep.predictors;
      m.measure = sel_measure;
      m.rule = rule;
      m.config = sel_cfg.resolve(prep.table, cols, &m.tied_columns, &m.jitter_auto);
      m.rows_loaded = prep.rows_loaded;
      m.rows_complete = prep.table.rows();
      m.timestamp = repro::utc_timestamp();

      const auto profile = strength_profile(prep.table, m.response, m.predictors, measure, m.config);
      const auto report = apply_rule(profile, rule);
      write_selection_outputs(sel_out, m, report, sel_svg);
      err << report.selected.size() << " of " << m.predictors.size() << " selected ("
          << m.rows_complete << " complete rows)\n";
      out << join(report.selected, " ") << '\n';
      return kExitOk;
    }

    if (*cmp) {
      auto prep = prepare(cmp_data, cmp_pred);
      const auto rule = cmp_rule.resolve(prep.predictors.size());
      std::vector<std::string> cols{cmp_pred.response};
      cols.insert(cols.end(), prep.predictors.begin(), prep.predictors.end());
      const auto cfg = cmp_cfg.resolve(prep.table, cols, nullptr, nullptr);

      std::map<Measure, SelectionReport> reports;
      for (Measure m : {Measure::ce, Measure::dcor, Measure::dhsic})
        reports.emplace(m, apply_rule(strength_profile(prep.table, cmp_pred.response, prep.predictors, m, cfg), rule));

      std::filesystem::create_directories(cmp_out);
      auto csv = copent::detail::open_out(std::filesystem::path(cmp_out) / "compare.csv");
      csv << "variable,ce,dcor,dhsic,selected_ce,selected_dcor,selected_dhsic\n";
      for (std::size_t i = 0; i < prep.predictors.size(); ++i) {
        const auto& name = prep.predictors[i];
        csv << name;
        for (Measure m : {Measure::ce, Measure::dcor, Measure::dhsic})
          csv << ',' << format_real(reports.at(m).profile.entries[i].strength);
        for (Measure m : {Measure::ce, Measure::dcor, Measure::dhsic})
          csv << ',' << (is_selected(reports.at(m), name) ? 1 : 0);
        csv << '\n';
      }

      auto as_set = [](const std::vector<std::string>& v) { return std::set<std::string>(v.begin(), v.end()); };
      const auto ce = as_set(reports.at(Measure::ce).selected);
      const auto dc = as_set(reports.at(Measure::dcor).selected);
      const auto dh = as_set(reports.at(Measure::dhsic).selected);
      auto inter = [](const std::set<std::string>& a, const std::set<std::string>& b) {
        std::size_t n = 0;
        for (const auto& x : a) n += b.count(x);
        return n;
      };
      out << "selected ce=" << ce.size() << " dcor=" << dc.size() << " dhsic=" << dh.size() << '\n'
          << "overlap ce&dcor=" << inter(ce, dc) << " ce&dhsic=" << inter(ce, dh)
          << " dcor&dhsic=" << inter(dc, dh) << '\n';
      for (Measure m : {Measure::ce, Measure::dcor, Measure::dhsic})
        out << to_string(m) << ": " << join(reports.at(m).selected, " ") << '\n';
      return kExitOk;
    }

    if (*rep) {
      repro::ReproOptions opt;
      opt.missing_markers.insert(rep_na.begin(), rep_na.end());
      opt.exclude = split_list(rep_exclude);
      DataTable probe = load_csv(rep_input, opt.missing_markers, true);
      opt.auto_jitter = !rep_cfg.jitter_given();
      opt.config = rep_cfg.resolve(probe, {}, nullptr, nullptr);
      const auto s = repro::run_reproduction(rep_input, rep_out, opt);
      write_markdown(s, out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace copent::cli
