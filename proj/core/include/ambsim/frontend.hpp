// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ambsim/numerics.hpp"

namespace ambsim {

enum class ConstellationKind { BPSK, QPSK, ASK4 };

/// How the 4-ASK amplitudes are scaled. MaxAmplitude keeps every point on or
/// inside the unit circle (energy 5/9); UnitEnergy gives energy 1 at the
/// price of points outside it.
enum class AskNormalization { MaxAmplitude, UnitEnergy };

ConstellationKind parse_constellation_kind(std::string_view name);
std::string_view to_string(ConstellationKind kind);
AskNormalization parse_ask_normalization(std::string_view name);
std::string_view to_string(AskNormalization norm);

/// Backscatter symbol alphabet with its pmf and the reflection scaling alpha.
///
/// Invariants checked at construction: points pairwise distinct, pmf sums
/// to one, alpha in [0, 1], and (unless built unconstrained) |beta_q| <= 1.
class Constellation {
 public:
  Constellation(std::vector<cplx> points, std::vector<double> probabilities, double alpha,
                bool amplitude_constrained = true);

  static Constellation equiprobable(std::vector<cplx> points, double alpha,
                                    bool amplitude_constrained = true);

  const std::vector<cplx>& points() const noexcept { return points_; }
  const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  double alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// sigma_b^2 = sum_q p_q |beta_q|^2
  double energy() const noexcept { return energy_; }
  /// delta_min = min_{q1 != q2} |beta_q1 - beta_q2|
  double min_distance() const noexcept { return min_distance_; }
  bool constant_modulus() const noexcept;
  bool equiprobable_pmf() const noexcept;
  bool amplitude_constrained() const noexcept { return amplitude_constrained_; }

  Constellation with_alpha(double alpha) const;

 private:
  std::vector<cplx> points_;
  std::vector<double> probabilities_;
  double alpha_;
  bool amplitude_constrained_;
  double energy_ = 0.0;
  double min_distance_ = 0.0;
};

struct Impedance {
  double resistance = 0.0;  // ohm, >= 0
  double reactance = 0.0;   // ohm

  cplx value() const noexcept { return {resistance, reactance}; }
};

struct ReflectionCoefficient {
  cplx value;
};

/// Gamma_q = alpha * beta_q. `q` is zero-based.
ReflectionCoefficient reflection_from_symbol(const Constellation& c, std::size_t q);

/// Chip impedance realizing a reflection coefficient for antenna impedance za.
/// Throws DegenerateCircuit for Gamma = -1.
Impedance chip_impedance(Impedance za, ReflectionCoefficient gamma);

/// Power-wave reflection coefficient ((Za)* - Zc) / (Za + Zc).
/// Throws DegenerateCircuit when Za + Zc = 0.
ReflectionCoefficient reflection_from_impedance(Impedance za, Impedance zc);

/// Fraction 1 - |Gamma|^2 of the available power delivered to the chip.
double harvested_fraction(ReflectionCoefficient gamma);

Constellation standard_constellation(ConstellationKind kind, double alpha,
                                     AskNormalization ask_norm = AskNormalization::MaxAmplitude);

}  // namespace ambsim
