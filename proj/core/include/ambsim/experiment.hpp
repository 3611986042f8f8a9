// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ambsim/config.hpp"
#include "ambsim/mc_engine.hpp"

namespace ambsim {

/// Names accepted by evaluate_quantity().
const std::vector<std::string>& known_quantities();

struct QuantityResult {
  std::string name;
  CapacityEstimate estimate;
  double runtime_s = 0.0;
};

/// Evaluates one named quantity. Closed forms report SE 0 and one trial;
/// quantities undefined for the constellation (high-SNR gain for ASK,
/// BPSK closed form for other sets) report NaN.
QuantityResult evaluate_quantity(const ScenarioConfig& cfg, const Scenario& sc, std::string_view name);

/// Builds the scenario and evaluates cfg.quantities in order.
std::vector<QuantityResult> run_scenario(const ScenarioConfig& cfg);

enum class SweepVariable { AlphaSqDb, D12Ratio, SnrBDb, SnrLDb };

SweepVariable parse_sweep_variable(std::string_view name);
std::string_view to_string(SweepVariable v);

/// Applies a sweep value to a config (snr_b_db sets both SNR_B1 and SNR_B4).
void apply_sweep_value(ScenarioConfig& cfg, SweepVariable v, double value);

/// A curve of a sweep: a label plus config overrides applied before the sweep.
struct SweepSeries {
  std::string label;
  std::vector<std::pair<std::string, std::string>> overrides;
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::AlphaSqDb;
  std::vector<double> grid;
  std::vector<std::string> quantities;
  /// Empty means a single unlabelled series with the base config.
  std::vector<SweepSeries> series;
};

struct SeriesResult {
  std::string label;
  std::vector<double> x;
  std::map<std::string, std::vector<CapacityEstimate>> values;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::AlphaSqDb;
  std::vector<std::string> quantities;
  std::vector<SeriesResult> series;

  const SeriesResult& find(std::string_view label) const;
};

/// One row per (series, grid point). Every point reuses the config seed,
/// so curves share random numbers across the grid.
SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec);

/// Parsed or emitted CSV: `#` metadata lines, one header row, data rows.
struct CsvTable {
  std::vector<std::string> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

/// %.17g, so values reload bit-exactly.
std::string format_number(double v);
std::string to_csv(const CsvTable& t);
CsvTable parse_csv(std::string_view text);

/// Standard metadata block: config hash, seed, trials.
std::vector<std::string> provenance_lines(const ScenarioConfig& cfg);

CsvTable scenario_table(const ScenarioConfig& cfg, const std::vector<QuantityResult>& results);
CsvTable sweep_table(const ScenarioConfig& cfg, const SweepResult& result);

struct FigurePreset {
  int id = 0;
  std::string title;
  ScenarioConfig config;
  SweepSpec sweep;
};

/// Parameterizations for figures 3..11. Throws std::out_of_range otherwise.
FigurePreset figure_preset(int id);

struct ShapeCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Qualitative assertions for a figure's sweep (monotonicity, extrema
/// locations, bound ordering, plateaus).
std::vector<ShapeCheck> check_figure_shape(const FigurePreset& preset, const SweepResult& result);

/// Runs a preset and returns its CSV with the shape checks and, for
/// figure 3, the reference-point comparison as metadata lines.
struct FigureRun {
  SweepResult result;
  std::vector<ShapeCheck> checks;
  CsvTable table;
};
FigureRun run_figure(const FigurePreset& preset);

}  // namespace ambsim
