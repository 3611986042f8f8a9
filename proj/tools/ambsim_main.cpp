// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ambsim/config.hpp"
#include "ambsim/errors.hpp"
#include "ambsim/experiment.hpp"

namespace {

constexpr int kExitValidation = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> quantities;
  std::vector<std::string> sets;
  bool literal = false;
  bool full = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_quantity) {
  cmd->add_option("--config", o.config_path, "Scenario config file (key = value)");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per estimate");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--out", o.out, "CSV output path (default: stdout)");
  if (with_quantity) {
    cmd->add_option("--quantity", o.quantities, "Quantities to evaluate")->delimiter(',');
  }
  cmd->add_option("--set", o.sets, "Extra config assignment key=value (repeatable)");
  cmd->add_flag("--strict-paper", o.literal,
                "Literal high-SNR gain factor and unit-energy 4-ASK");
  cmd->add_flag("--full", o.full, "1e6 trials unless --trials is given");
}

ambsim::ScenarioConfig resolve(const CommonOptions& o, ambsim::ScenarioConfig cfg) {
  if (!o.config_path.empty()) cfg = ambsim::parse_config(
      [&] {
        std::ifstream in(o.config_path);
        if (!in) throw ambsim::ConfigError("config: cannot open '" + o.config_path + "'");
        return std::string(std::istreambuf_iterator<char>(in), {});
      }(),
      cfg);
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ambsim::ConfigError("--set expects key=value, got '" + s + "'");
    ambsim::set_config_value(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (o.full) cfg.trials = 1000000;
  if (o.trials) cfg.trials = *o.trials;
  if (o.seed) cfg.seed = *o.seed;
  if (!o.quantities.empty()) cfg.quantities = o.quantities;
  if (o.literal) {
    cfg.high_snr_variant = ambsim::HighSnrVariant::Literal;
    cfg.ask_normalization = ambsim::AskNormalization::UnitEnergy;
  }
  const auto& known = ambsim::known_quantities();
  for (const auto& q : cfg.quantities) {
    if (std::find(known.begin(), known.end(), q) == known.end()) {
      throw ambsim::ConfigError("unknown quantity '" + q + "' (see `ambsim keys`)");
    }
  }
  return cfg;
}

void emit(const CommonOptions& o, const ambsim::CsvTable& table) {
  const std::string text = ambsim::to_csv(table);
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot write '" + o.out + "'");
  f << text;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  // first:last:step, or a comma list.
  if (std::count(spec.begin(), spec.end(), ':') == 2) {
    const auto a = spec.find(':');
    const auto b = spec.find(':', a + 1);
    const double first = std::stod(spec.substr(0, a));
    const double last = std::stod(spec.substr(a + 1, b - a - 1));
    const double step = std::stod(spec.substr(b + 1));
    if (!(step != 0.0)) throw std::invalid_argument("grid step must be nonzero");
    const long n = std::lround((last - first) / step);
    if (n < 0) throw std::invalid_argument("grid step has the wrong sign");
    for (long i = 0; i <= n; ++i) out.push_back(first + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ambsim: achievable-rate simulator for ambient backscatter over multicarrier links"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "Evaluate quantities at one operating point");
  add_common(run, run_opts, true);

  CommonOptions sweep_opts;
  std::string variable = "alpha_sq_db";
  std::string grid_spec;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one variable over a grid");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--variable", variable, "alpha_sq_db | d12_ratio | snr_b_db | snr_l_db");
  sweep->add_option("--grid", grid_spec, "first:last:step or comma list")->required();

  CommonOptions fig_opts;
  std::string preset;
  CLI::App* figure = app.add_subcommand("figure", "Run a figure preset (fig3 .. fig11)");
  add_common(figure, fig_opts, false);
  figure->add_option("--preset", preset, "Preset name, e.g. fig7")->required();

  CLI::App* keys = app.add_subcommand("keys", "List config keys and quantity names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*keys) {
      std::cout << "config keys:\n";
      for (const auto& k : ambsim::config_keys()) std::cout << "  " << k << "\n";
      std::cout << "quantities:\n";
      for (const auto& q : ambsim::known_quantities()) std::cout << "  " << q << "\n";
      return 0;
    }
    if (*run) {
      const ambsim::ScenarioConfig cfg = resolve(run_opts, ambsim::ScenarioConfig());
      const auto results = ambsim::run_scenario(cfg);
      emit(run_opts, ambsim::scenario_table(cfg, results));
      return 0;
    }
    if (*sweep) {
      const ambsim::ScenarioConfig cfg = resolve(sweep_opts, ambsim::ScenarioConfig());
      ambsim::SweepSpec spec;
      spec.variable = ambsim::parse_sweep_variable(variable);
      spec.grid = parse_grid(grid_spec);
      spec.quantities = cfg.quantities;
      const auto result = ambsim::run_sweep(cfg, spec);
      emit(sweep_opts, ambsim::sweep_table(cfg, result));
      return 0;
    }
    if (*figure) {
      std::string id = preset;
      if (id.rfind("fig", 0) == 0) id = id.substr(3);
      ambsim::FigurePreset p = ambsim::figure_preset(std::stoi(id));
      p.config = resolve(fig_opts, p.config);
      p.config.quantities = p.sweep.quantities;
      const ambsim::FigureRun fr = ambsim::run_figure(p);
      emit(fig_opts, fr.table);
      for (const auto& c : fr.checks) {
        if (!c.passed) std::cerr << "shape check FAIL: " << c.name << " (" << c.detail << ")\n";
      }
      return 0;
    }
  } catch (const ambsim::ConditionViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ambsim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return 0;
}
