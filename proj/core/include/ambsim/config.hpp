// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ambsim/frontend.hpp"
#include "ambsim/legacy_capacity.hpp"
#include "ambsim/scenario.hpp"

namespace ambsim {

/// Malformed config text or an unknown key. Inequality failures are
/// reported separately as ConditionViolation when the scenario is built.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything needed to run an experiment. Stored in user units (dB,
/// ratios, kinds); build_scenario() resolves them into a Scenario.
struct ScenarioConfig {
  std::size_t m = 32;
  std::size_t cp = 8;
  std::array<LinkTiming, kLinkCount> links{};

  /// LTx and LRx coordinates; their distance is d13.
  std::array<double, 2> node1{-0.5, 0.0};
  std::array<double, 2> node3{0.5, 0.0};
  /// d12 / d13
  double d12_ratio = 0.2;
  double d14 = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  double eta = 3.0;

  double snr_l_db = 20.0;
  double sigma_s_sq = 1.0;
  double alpha_sq = 0.01;
  /// Exactly one of each pair is set; the SNR form fixes the noise as
  /// alpha^2 sigma_b^2 / SNR.
  std::optional<double> sigma_v1_sq;
  std::optional<double> snr_b1_db = 0.0;
  std::optional<double> sigma_v4_sq;
  std::optional<double> snr_b4_db = -20.0;
  double self_interference_variance = 1.0;

  ConstellationKind constellation = ConstellationKind::QPSK;
  AskNormalization ask_normalization = AskNormalization::MaxAmplitude;
  PsiSampling sampling = PsiSampling::TapLevel;

  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::uint64_t batch_size = 1024;
  std::size_t mi_samples = 512;

  double rate_rs = 6.0;
  HighSnrVariant high_snr_variant = HighSnrVariant::DimensionalAudit;

  std::vector<std::string> quantities{"c3_no_backscatter", "c3_semianalytic"};

  ScenarioConfig();

  double d13() const;
  double d12() const { return d12_ratio * d13(); }
};

/// Applies one `key = value` assignment. Throws ConfigError for unknown
/// keys or unparsable values.
void set_config_value(ScenarioConfig& cfg, std::string_view key, std::string_view value);

/// Parses the flat `section.key = value` format. `#` starts a comment.
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = ScenarioConfig());
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ScenarioConfig& cfg);

/// FNV-1a 64 of the canonical text.
std::uint64_t config_hash(const ScenarioConfig& cfg);

/// Resolves the config into a validated Scenario. Throws ConditionViolation.
Scenario build_scenario(const ScenarioConfig& cfg);

TrialPlan trial_plan(const ScenarioConfig& cfg);

/// All recognised keys, for documentation and error messages.
std::vector<std::string> config_keys();

}  // namespace ambsim
