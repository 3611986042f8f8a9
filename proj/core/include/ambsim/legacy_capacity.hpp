// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ambsim/mc_engine.hpp"
#include "ambsim/scenario.hpp"

namespace ambsim {

/// Legacy-link capacity in b/s/Hz with the backscatter device silent.
double c3_no_backscatter(double gamma13);

/// Gamma13 [1 + alpha^2 (sigma23^2/sigma13^2) |b|^2 |Psi12(m)|^2]
double upsilon3(double gamma13, double alpha, double sigma23_sq, double sigma13_sq, cplx b,
                cplx psi12_m);

/// (1/M) sum_m log2(1 + snr_l |Psi3(m)|^2) for one realization.
double legacy_rate(std::span<const cplx> psi3, double snr_l);

/// Expectation over (b, |Psi12(m)|^2) of (log2 e / M) sum_m exi(Upsilon3(m)).
/// |Psi12(m)|^2 is drawn from its exact Exp(sigma12^2) marginal, which is
/// exact here since the integrand is a per-subcarrier sum.
CapacityEstimate c3_semianalytic(const Scenario& sc, const TrialPlan& plan);

/// Full Monte Carlo: draws taps for links 13, 12, 23 and b, forms Psi3 and
/// averages legacy_rate.
CapacityEstimate c3_mc_full(const Scenario& sc, const TrialPlan& plan);

/// Joint run of c3_mc_full at the scenario's alpha and at alpha = 0 on the
/// same draws. Components: 0 = C3, 1 = C3 at alpha = 0, 2 = difference.
MultiEstimate c3_mc_paired(const Scenario& sc, const TrialPlan& plan);

/// Low-SNR gain alpha^2 sigma_b^2 SNR_L (d12 d23)^{-eta} log2 e.
double delta_c3_low_snr(const Scenario& sc);

/// Omega3 = alpha^2 (d13 / (d12 d23))^eta
double omega3(const Scenario& sc);

enum class HighSnrVariant {
  /// exi(Omega3) log2 e
  DimensionalAudit,
  /// exi(Omega3) log2^2 e, the displayed form taken literally
  Literal,
};

/// High-SNR gain. Requires a constant-modulus constellation with |b| = 1.
double delta_c3_high_snr(const Scenario& sc, HighSnrVariant variant = HighSnrVariant::DimensionalAudit);

/// Fraction of draws whose per-frame rate falls below rate_rs. Draw order
/// matches c3_mc_full, so runs at different alpha share channel draws.
CapacityEstimate outage_probability(const Scenario& sc, double rate_rs, const TrialPlan& plan);

enum class AsymptoteRegime { LowSnr, HighSnr };

struct DistanceCurve {
  std::vector<double> d12;
  std::vector<double> value;
  std::vector<std::size_t> local_minima;  // interior grid indices
  std::vector<std::size_t> local_maxima;
};

/// Asymptotic Delta C3 along d12 with d23 from the cosine law.
DistanceCurve delta_c3_vs_distance(const Scenario& sc, std::span<const double> d12_grid,
                                   AsymptoteRegime regime,
                                   HighSnrVariant variant = HighSnrVariant::DimensionalAudit);

/// Interior strict local extrema of a sampled curve.
void find_local_extrema(std::span<const double> values, std::vector<std::size_t>& minima,
                        std::vector<std::size_t>& maxima);

}  // namespace ambsim
