// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ambsim/bs_colocated.hpp"
#include "ambsim/bs_separated.hpp"
#include "ambsim/legacy_capacity.hpp"

namespace ambsim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kReferenceDeltaC3 = 0.1315;

CapacityEstimate exact(double v) { return {v, 0.0, 1}; }

using Evaluator = std::function<CapacityEstimate(const ScenarioConfig&, const Scenario&)>;

const std::vector<std::pair<std::string, Evaluator>>& evaluators() {
  static const std::vector<std::pair<std::string, Evaluator>> table{
      {"c3_no_backscatter",
       [](const ScenarioConfig&, const Scenario& sc) { return exact(c3_no_backscatter(sc.gamma13())); }},
      {"c3_semianalytic",
       [](const ScenarioConfig& c, const Scenario& sc) { return c3_semianalytic(sc, trial_plan(c)); }},
      {"c3_mc_full",
       [](const ScenarioConfig& c, const Scenario& sc) { return c3_mc_full(sc, trial_plan(c)); }},
      {"delta_c3",
       [](const ScenarioConfig& c, const Scenario& sc) {
         CapacityEstimate e = c3_semianalytic(sc, trial_plan(c));
         e.mean -= c3_no_backscatter(sc.gamma13());
         return e;
       }},
      {"delta_c3_low_snr",
       [](const ScenarioConfig&, const Scenario& sc) { return exact(delta_c3_low_snr(sc)); }},
      {"delta_c3_high_snr",
       [](const ScenarioConfig& c, const Scenario& sc) {
         if (!sc.constellation.constant_modulus()) return exact(kNaN);
         return exact(delta_c3_high_snr(sc, c.high_snr_variant));
       }},
      {"outage",
       [](const ScenarioConfig& c, const Scenario& sc) {
         return outage_probability(sc, c.rate_rs, trial_plan(c));
       }},
      {"outage_no_backscatter",
       [](const ScenarioConfig& c, const Scenario& sc) {
         Scenario silent = sc;
         silent.constellation = sc.constellation.with_alpha(0.0);
         return outage_probability(silent, c.rate_rs, trial_plan(c));
       }},
      {"c1_upper", [](const ScenarioConfig& c, const Scenario& sc) { return c1_upper(sc, trial_plan(c)); }},
      {"c1_upper_large_m",
       [](const ScenarioConfig&, const Scenario& sc) { return exact(c1_upper_large_m(sc)); }},
      {"c1_lower_cutoff",
       [](const ScenarioConfig& c, const Scenario& sc) { return c1_lower_cutoff(sc, trial_plan(c)); }},
      {"c1_lower_min_distance",
       [](const ScenarioConfig& c, const Scenario& sc) {
         return c1_lower_min_distance(sc, trial_plan(c));
       }},
      {"c1_lower_large_m",
       [](const ScenarioConfig&, const Scenario& sc) {
         return exact(c1_lower_large_m(sc).reference_point);
       }},
      {"c1_lower_large_m_min_distance",
       [](const ScenarioConfig&, const Scenario& sc) {
         return exact(c1_lower_large_m(sc).min_distance);
       }},
      {"c1_mixture_mi",
       [](const ScenarioConfig& c, const Scenario& sc) {
         const double inv_m = 1.0 / static_cast<double>(sc.frame.m);
         return run_estimate(trial_plan(c), [&](RandomStream& rng) {
           const ColocatedRealization r = draw_colocated_realization(sc, rng);
           return inv_m * mixture_mutual_information(sc.constellation, r, c.mi_samples, rng);
         });
       }},
      {"c4_upper", [](const ScenarioConfig& c, const Scenario& sc) { return c4_upper(sc, trial_plan(c)); }},
      {"c4_upper_large_m",
       [](const ScenarioConfig&, const Scenario& sc) { return exact(c4_upper_large_m(sc)); }},
      {"c4_lower", [](const ScenarioConfig& c, const Scenario& sc) { return c4_lower(sc, trial_plan(c)); }},
      {"bpsk_lower_closed_form",
       [](const ScenarioConfig&, const Scenario& sc) {
         if (sc.constellation.size() != 2 || sc.alpha() == 0.0) return exact(kNaN);
         return exact(bpsk_lower_closed_form(sc));
       }},
      {"j_function",
       [](const ScenarioConfig&, const Scenario& sc) {
         if (sc.alpha() == 0.0) return exact(0.0);
         const NetworkGeometry& g = sc.geometry;
         return exact(j_function(g.d12, g.d14, g.theta, g.eta, sc.alpha()));
       }},
  };
  return table;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_row(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<double> grid(double first, double last, double step) {
  std::vector<double> g;
  const auto n = static_cast<long>(std::llround((last - first) / step));
  for (long i = 0; i <= n; ++i) g.push_back(first + static_cast<double>(i) * step);
  return g;
}

// Shape-check helpers.

double combined_se(const CapacityEstimate& a, const CapacityEstimate& b) {
  return std::hypot(a.std_error, b.std_error);
}

ShapeCheck make_check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Strictly monotone (sign = -1 decreasing, +1 increasing) in the means.
ShapeCheck monotone(const std::string& name, const SeriesResult& s, const std::string& q, int sign,
                    bool strict) {
  const auto& v = s.values.at(q);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double diff = sign * (v[i].mean - v[i - 1].mean);
    if (strict ? !(diff > 0.0) : (diff < -3.0 * combined_se(v[i], v[i - 1]))) {
      return make_check(name, false,
                        s.label + ": " + q + " breaks monotonicity at x=" + fmt_short(s.x[i]));
    }
  }
  return make_check(name, true, s.label + ": " + q + (sign > 0 ? " increasing" : " decreasing"));
}

ShapeCheck extremum_near(const std::string& name, const SeriesResult& s, const std::string& q,
                         bool minimum, double target, double tol) {
  std::vector<double> means;
  for (const auto& e : s.values.at(q)) means.push_back(e.mean);
  std::vector<std::size_t> mins, maxs;
  find_local_extrema(means, mins, maxs);
  const auto& idx = minimum ? mins : maxs;
  for (std::size_t i : idx) {
    if (std::abs(s.x[i] - target) <= tol) {
      return make_check(name, true,
                        s.label + ": local " + (minimum ? "min" : "max") + " of " + q + " at x=" +
                            fmt_short(s.x[i]));
    }
  }
  return make_check(name, false,
                    s.label + ": no local " + std::string(minimum ? "min" : "max") + " of " + q +
                        " within " + fmt_short(tol) + " of " + fmt_short(target));
}

ShapeCheck dominates(const std::string& name, const SeriesResult& hi, const std::string& qa,
                     const SeriesResult& lo, const std::string& qb) {
  const auto& a = hi.values.at(qa);
  const auto& b = lo.values.at(qb);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].mean + 3.0 * combined_se(a[i], b[i]) < b[i].mean) {
      return make_check(name, false,
                        hi.label + " " + qa + " < " + lo.label + " " + qb + " at x=" + fmt_short(hi.x[i]));
    }
  }
  return make_check(name, true, hi.label + " " + qa + " >= " + lo.label + " " + qb);
}

std::size_t nearest_index(const std::vector<double>& x, double target) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs(x[i] - target) < std::abs(x[best] - target)) best = i;
  }
  return best;
}

}  // namespace

const std::vector<std::string>& known_quantities() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : evaluators()) n.push_back(k);
    return n;
  }();
  return names;
}

QuantityResult evaluate_quantity(const ScenarioConfig& cfg, const Scenario& sc, std::string_view name) {
  for (const auto& [k, fn] : evaluators()) {
    if (k == name) {
      const auto t0 = std::chrono::steady_clock::now();
      QuantityResult r{k, fn(cfg, sc), 0.0};
      r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  }
  throw std::invalid_argument("unknown quantity '" + std::string(name) + "'");
}

std::vector<QuantityResult> run_scenario(const ScenarioConfig& cfg) {
  const Scenario sc = build_scenario(cfg);
  std::vector<QuantityResult> out;
  for (const auto& q : cfg.quantities) out.push_back(evaluate_quantity(cfg, sc, q));
  return out;
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "alpha_sq_db") return SweepVariable::AlphaSqDb;
  if (name == "d12_ratio") return SweepVariable::D12Ratio;
  if (name == "snr_b_db") return SweepVariable::SnrBDb;
  if (name == "snr_l_db") return SweepVariable::SnrLDb;
  throw std::invalid_argument("unknown sweep variable '" + std::string(name) + "'");
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::AlphaSqDb: return "alpha_sq_db";
    case SweepVariable::D12Ratio: return "d12_ratio";
    case SweepVariable::SnrBDb: return "snr_b_db";
    case SweepVariable::SnrLDb: return "snr_l_db";
  }
  return "?";
}

void apply_sweep_value(ScenarioConfig& cfg, SweepVariable v, double value) {
  switch (v) {
    case SweepVariable::AlphaSqDb: cfg.alpha_sq = std::pow(10.0, value / 10.0); break;
    case SweepVariable::D12Ratio: cfg.d12_ratio = value; break;
    case SweepVariable::SnrBDb:
      cfg.snr_b1_db = value;
      cfg.sigma_v1_sq.reset();
      cfg.snr_b4_db = value;
      cfg.sigma_v4_sq.reset();
      break;
    case SweepVariable::SnrLDb: cfg.snr_l_db = value; break;
  }
}

const SeriesResult& SweepResult::find(std::string_view label) const {
  for (const auto& s : series) {
    if (s.label == label) return s;
  }
  throw std::out_of_range("sweep result has no series '" + std::string(label) + "'");
}

SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("sweep: empty grid");
  const bool up = spec.grid.size() < 2 || spec.grid[1] > spec.grid[0];
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (up ? !(spec.grid[i] > spec.grid[i - 1]) : !(spec.grid[i] < spec.grid[i - 1])) {
      throw std::invalid_argument("sweep: grid must be strictly monotone");
    }
  }
  if (spec.quantities.empty()) throw std::invalid_argument("sweep: no quantities");
  for (const auto& q : spec.quantities) {
    if (std::find(known_quantities().begin(), known_quantities().end(), q) == known_quantities().end()) {
      throw std::invalid_argument("unknown quantity '" + q + "'");
    }
  }

  std::vector<SweepSeries> series = spec.series;
  if (series.empty()) series.push_back({"", {}});

  SweepResult result;
  result.variable = spec.variable;
  result.quantities = spec.quantities;
  for (const SweepSeries& ser : series) {
    ScenarioConfig base = cfg;
    for (const auto& [k, v] : ser.overrides) set_config_value(base, k, v);
    SeriesResult sr;
    sr.label = ser.label;
    for (double x : spec.grid) {
      ScenarioConfig point = base;
      apply_sweep_value(point, spec.variable, x);
      const Scenario sc = build_scenario(point);
      sr.x.push_back(x);
      for (const auto& q : spec.quantities) {
        sr.values[q].push_back(evaluate_quantity(point, sc, q).estimate);
      }
    }
    result.series.push_back(std::move(sr));
  }
  return result;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("csv: no column '" + std::string(name) + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const CsvTable& t) {
  std::ostringstream os;
  for (const auto& m : t.metadata) os << "# " << m << "\n";
  auto row = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
    os << "\n";
  };
  row(t.header);
  for (const auto& r : t.rows) row(r);
  return os.str();
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  bool have_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      t.metadata.emplace_back(line);
      continue;
    }
    auto cells = split_csv_row(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
    } else {
      if (cells.size() != t.header.size()) throw std::invalid_argument("csv: ragged row");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

std::vector<std::string> provenance_lines(const ScenarioConfig& cfg) {
  return {"ambsim " + std::string("0.1.0"), "config_hash: " + hex64(config_hash(cfg)),
          "seed: " + std::to_string(cfg.seed), "trials: " + std::to_string(cfg.trials)};
}

CsvTable scenario_table(const ScenarioConfig& cfg, const std::vector<QuantityResult>& results) {
  CsvTable t;
  t.metadata = provenance_lines(cfg);
  t.header = {"quantity", "mean", "std_error", "trials", "runtime_s"};
  for (const auto& r : results) {
    t.rows.push_back({r.name, format_number(r.estimate.mean), format_number(r.estimate.std_error),
                      std::to_string(r.estimate.trials), format_number(r.runtime_s)});
  }
  return t;
}

CsvTable sweep_table(const ScenarioConfig& cfg, const SweepResult& result) {
  CsvTable t;
  t.metadata = provenance_lines(cfg);
  t.metadata.push_back("variable: " + std::string(to_string(result.variable)));
  t.header = {"series", std::string(to_string(result.variable))};
  for (const auto& q : result.quantities) {
    t.header.push_back(q);
    t.header.push_back(q + "_se");
  }
  for (const auto& s : result.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      std::vector<std::string> row{s.label, format_number(s.x[i])};
      for (const auto& q : result.quantities) {
        const CapacityEstimate& e = s.values.at(q)[i];
        row.push_back(format_number(e.mean));
        row.push_back(format_number(e.std_error));
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

FigurePreset figure_preset(int id) {
  FigurePreset p;
  p.id = id;
  ScenarioConfig& c = p.config;
  SweepSpec& s = p.sweep;
  const std::vector<double> alpha_grid = grid(-40.0, 0.0, 5.0);
  const std::vector<double> d12_grid = grid(0.01, 1.5, 0.01);

  auto legacy_series = [] {
    std::vector<SweepSeries> out;
    for (const char* phi : {"pi/18", "pi/3"}) {
      for (const char* kind : {"QPSK", "ASK4"}) {
        out.push_back({std::string("phi=") + phi + "," + kind,
                       {{"geometry.phi", phi}, {"constellation.kind", kind}}});
      }
    }
    return out;
  };
  auto theta_kind_series = [](std::initializer_list<const char*> kinds) {
    std::vector<SweepSeries> out;
    for (const char* th : {"pi/18", "pi/3"}) {
      for (const char* kind : kinds) {
        out.push_back({std::string("theta=") + th + "," + kind,
                       {{"geometry.theta", th}, {"constellation.kind", kind}}});
      }
    }
    return out;
  };

  switch (id) {
    case 3:
      p.title = "Legacy ergodic capacity vs alpha^2";
      s = {SweepVariable::AlphaSqDb, alpha_grid, {"c3_semianalytic", "c3_no_backscatter", "c3_mc_full"},
           legacy_series()};
      break;
    case 4:
      p.title = "Legacy ergodic capacity vs d12/d13";
      s = {SweepVariable::D12Ratio, d12_grid, {"c3_semianalytic", "c3_no_backscatter"}, legacy_series()};
      break;
    case 5:
      p.title = "Legacy outage probability vs alpha^2";
      s = {SweepVariable::AlphaSqDb, alpha_grid, {"outage", "outage_no_backscatter"}, legacy_series()};
      break;
    case 6:
      p.title = "Legacy outage probability vs d12/d13";
      s = {SweepVariable::D12Ratio, grid(0.05, 1.5, 0.05), {"outage", "outage_no_backscatter"},
           legacy_series()};
      break;
    case 7:
    case 8: {
      const bool upper = id == 7;
      p.title = upper ? "Co-located upper bound vs d12/d13" : "Co-located cut-off lower bound vs d12/d13";
      std::vector<SweepSeries> ser;
      for (const char* snr : {"-20", "-10", "0"}) {
        const std::vector<const char*> kinds =
            upper ? std::vector<const char*>{"QPSK"} : std::vector<const char*>{"QPSK", "ASK4"};
        for (const char* kind : kinds) {
          ser.push_back({std::string("snr_b1_db=") + snr + "," + kind,
                         {{"power.snr_b1_db", snr}, {"constellation.kind", kind}}});
        }
      }
      s = {SweepVariable::D12Ratio, grid(0.02, 1.5, 0.02),
           upper ? std::vector<std::string>{"c1_upper", "c1_upper_large_m"}
                 : std::vector<std::string>{"c1_lower_cutoff", "c1_lower_large_m"},
           ser};
      break;
    }
    case 9: {
      p.title = "Separated upper bound vs d12/d14";
      std::vector<SweepSeries> ser;
      for (const char* th : {"pi/18", "pi/3"}) {
        for (const char* snr : {"-20", "-10", "0"}) {
          ser.push_back({std::string("theta=") + th + ",snr_b4_db=" + snr,
                         {{"geometry.theta", th}, {"power.snr_b4_db", snr}}});
        }
      }
      s = {SweepVariable::D12Ratio, d12_grid, {"c4_upper", "c4_upper_large_m"}, ser};
      break;
    }
    case 10:
      p.title = "Separated cut-off lower bound vs SNR_B4";
      s = {SweepVariable::SnrBDb, grid(-20.0, 60.0, 10.0), {"c4_lower"},
           theta_kind_series({"BPSK", "QPSK", "ASK4"})};
      break;
    case 11:
      p.title = "Separated cut-off lower bound vs d12/d14";
      c.snr_b4_db = -20.0;
      s = {SweepVariable::D12Ratio, grid(0.05, 1.5, 0.05), {"c4_lower"},
           theta_kind_series({"QPSK", "ASK4"})};
      break;
    default:
      throw std::out_of_range("figure preset " + std::to_string(id) + " does not exist (3..11)");
  }
  c.quantities = s.quantities;
  return p;
}

std::vector<ShapeCheck> check_figure_shape(const FigurePreset& preset, const SweepResult& r) {
  std::vector<ShapeCheck> out;
  const MobilityExtrema ext = mobility_extrema(std::numbers::pi / 18.0);
  const double step = r.series.front().x.size() > 1 ? r.series.front().x[1] - r.series.front().x[0] : 0.0;
  const double tol = step + 1e-9;

  switch (preset.id) {
    case 3:
      for (const auto& s : r.series) {
        out.push_back(dominates("no_degradation", s, "c3_semianalytic", s, "c3_no_backscatter"));
        out.push_back(monotone("increasing_in_alpha", s, "c3_semianalytic", +1, false));
      }
      break;
    case 4:
      for (const auto& s : r.series) {
        out.push_back(dominates("no_degradation", s, "c3_semianalytic", s, "c3_no_backscatter"));
      }
      for (const char* k : {"QPSK", "ASK4"}) {
        const auto& a = r.find(std::string("phi=pi/3,") + k);
        out.push_back(monotone("decreasing_phi_in_A", a, "c3_semianalytic", -1, true));
        const auto& b = r.find(std::string("phi=pi/18,") + k);
        out.push_back(extremum_near("local_min_at_d_min", b, "c3_semianalytic", true, ext.d_min, tol));
        out.push_back(extremum_near("local_max_at_d_max", b, "c3_semianalytic", false, ext.d_max, tol));
      }
      break;
    case 5:
    case 6:
      for (const auto& s : r.series) {
        const auto& a = s.values.at("outage");
        const auto& b = s.values.at("outage_no_backscatter");
        bool ok = true;
        std::string detail = s.label + ": outage <= silent outage + 3 SE";
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i].mean > b[i].mean + 3.0 * combined_se(a[i], b[i])) {
            ok = false;
            detail = s.label + ": outage exceeds silent outage at x=" + fmt_short(s.x[i]);
            break;
          }
        }
        out.push_back(make_check("outage_not_worse", ok, detail));
      }
      if (preset.id == 5) {
        for (const auto& s : r.series) {
          out.push_back(monotone("outage_nonincreasing_in_alpha", s, "outage", -1, false));
        }
      }
      break;
    case 7:
      for (const auto& s : r.series) {
        out.push_back(monotone("decreasing_in_d12", s, "c1_upper", -1, true));
        out.push_back(monotone("large_m_decreasing_in_d12", s, "c1_upper_large_m", -1, true));
      }
      for (std::size_t i = 1; i < r.series.size(); ++i) {
        out.push_back(dominates("increasing_in_snr", r.series[i], "c1_upper", r.series[i - 1], "c1_upper"));
      }
      break;
    case 8:
      for (const auto& s : r.series) {
        out.push_back(monotone("nonincreasing_in_d12", s, "c1_lower_cutoff", -1, false));
      }
      for (const char* snr : {"-20", "-10", "0"}) {
        const auto& q = r.find(std::string("snr_b1_db=") + snr + ",QPSK");
        const auto& a = r.find(std::string("snr_b1_db=") + snr + ",ASK4");
        out.push_back(dominates("psk_beats_ask", q, "c1_lower_cutoff", a, "c1_lower_cutoff"));
      }
      for (const char* snr : {"-10", "0"}) {
        const auto& q = r.find(std::string("snr_b1_db=") + snr + ",QPSK");
        const double v = q.values.at("c1_lower_cutoff").front().mean;
        const double target = std::log2(4.0) / static_cast<double>(preset.config.m);
        out.push_back(make_check("plateau_log2Q_over_M", std::abs(v - target) <= 0.01 * target,
                                 q.label + ": " + fmt_short(v) + " at x=" + fmt_short(q.x.front())));
      }
      break;
    case 9:
      for (const char* snr : {"-20", "-10", "0"}) {
        for (const char* q : {"c4_upper", "c4_upper_large_m"}) {
          const auto& a = r.find(std::string("theta=pi/3,snr_b4_db=") + snr);
          out.push_back(monotone("decreasing_theta_in_A", a, q, -1, true));
          const auto& b = r.find(std::string("theta=pi/18,snr_b4_db=") + snr);
          out.push_back(extremum_near("local_min_at_d_min", b, q, true, ext.d_min, tol));
          out.push_back(extremum_near("local_max_at_d_max", b, q, false, ext.d_max, tol));
          const auto& v = b.values.at(q);
          const bool global = std::all_of(v.begin() + 1, v.end(),
                                          [&](const CapacityEstimate& e) { return e.mean < v.front().mean; });
          out.push_back(make_check("global_max_near_ltx", global, b.label + ": " + q));
        }
      }
      break;
    case 10:
      for (const auto& s : r.series) {
        out.push_back(monotone("nondecreasing_in_snr", s, "c4_lower", +1, false));
        const auto& v = s.values.at("c4_lower");
        const auto& a = v[v.size() - 2];
        const auto& b = v.back();
        const double se = combined_se(a, b);
        out.push_back(make_check("saturation", std::abs(a.mean - b.mean) < 3.0 * se || a.mean == b.mean,
                                 s.label + ": |diff| = " + fmt_short(std::abs(a.mean - b.mean)) +
                                     ", 3 SE = " + fmt_short(3.0 * se)));
      }
      for (const char* th : {"pi/18", "pi/3"}) {
        const auto& q = r.find(std::string("theta=") + th + ",QPSK");
        const auto& a = r.find(std::string("theta=") + th + ",ASK4");
        out.push_back(dominates("psk_beats_ask", q, "c4_lower", a, "c4_lower"));
      }
      break;
    case 11:
      for (const char* th : {"pi/18", "pi/3"}) {
        const auto& q = r.find(std::string("theta=") + th + ",QPSK");
        const auto& a = r.find(std::string("theta=") + th + ",ASK4");
        out.push_back(dominates("psk_beats_ask", q, "c4_lower", a, "c4_lower"));
      }
      for (const char* kind : {"QPSK", "ASK4"}) {
        const auto& s = r.find(std::string("theta=pi/3,") + kind);
        const auto& v = s.values.at("c4_lower");
        std::size_t arg = 0;
        for (std::size_t i = 1; i < v.size(); ++i) {
          if (v[i].mean > v[arg].mean) arg = i;
        }
        const bool interior = arg > 0 && arg + 1 < v.size() && s.x[arg] <= 0.6;
        out.push_back(make_check("interior_max_theta_in_A", interior,
                                 s.label + ": argmax at x=" + fmt_short(s.x[arg])));
      }
      break;
    default: break;
  }
  return out;
}

FigureRun run_figure(const FigurePreset& preset) {
  FigureRun run;
  run.result = run_sweep(preset.config, preset.sweep);
  run.checks = check_figure_shape(preset, run.result);

  std::vector<std::string> extra;
  if (preset.id == 3) {
    const auto& s = run.result.find("phi=pi/18,QPSK");
    const std::size_t i = nearest_index(s.x, -40.0);
    const auto& semi = s.values.at("c3_semianalytic")[i];
    const auto& full = s.values.at("c3_mc_full")[i];
    const double closed = s.values.at("c3_no_backscatter")[i].mean;
    extra.push_back("reference_point: delta_c3 series=phi=pi/18,QPSK alpha_sq_db=-40 quoted=" +
                    format_number(kReferenceDeltaC3) + " semianalytic=" +
                    format_number(semi.mean - closed) + " se=" + format_number(semi.std_error) +
                    " mc_full=" + format_number(full.mean - closed) + " se=" +
                    format_number(full.std_error));
    const double se = combined_se(semi, full);
    run.checks.push_back(make_check("reference_point_estimator_agreement",
                                    std::abs(semi.mean - full.mean) <= 3.0 * se,
                                    "|semianalytic - mc_full| = " + fmt_short(std::abs(semi.mean - full.mean)) +
                                        ", 3 SE = " + fmt_short(3.0 * se)));
  }

  run.table = sweep_table(preset.config, run.result);
  run.table.metadata.insert(run.table.metadata.begin() + 1, "figure: " + std::to_string(preset.id) +
                                                                 " " + preset.title);
  for (const auto& e : extra) run.table.metadata.push_back(e);
  for (const auto& c : run.checks) {
    run.table.metadata.push_back(std::string("check: ") + (c.passed ? "PASS " : "FAIL ") + c.name +
                                 " (" + c.detail + ")");
  }
  return run;
}

}  // namespace ambsim
