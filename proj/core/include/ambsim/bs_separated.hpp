// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ambsim/frontend.hpp"
#include "ambsim/mc_engine.hpp"
#include "ambsim/scenario.hpp"

namespace ambsim {

/// Backscatter receiver at a separate node 4. It knows the channel responses
/// and the CFO but not the legacy data, so Psi14 s acts as interference.

struct SeparatedRealization {
  CVector psi12, psi24, psi14, s;
  double theta124 = 0.0;  // sum_m |s(m)|^2 |Psi12(m)|^2 |Psi24(m)|^2
  double snr_b4 = 0.0;    // alpha^2 sigma_b^2 / sigma_v4^2
};

/// Draw order: s, then links 12, 24, 14 (taps or marginals per sc.sampling).
SeparatedRealization draw_separated_realization(const Scenario& sc, RandomStream& rng);

/// Per-symbol, per-subcarrier received variances, Q x M row-major.
struct LambdaSpectrum {
  std::size_t q = 0;
  std::size_t m = 0;
  std::vector<double> values;

  double operator()(std::size_t qi, std::size_t mi) const { return values[qi * m + mi]; }
};

/// Lambda_q(m) = sigma_s^2 |alpha Psi12 Psi24 beta_q + Psi14|^2 + sigma_v4^2.
/// The expanded four-term form is checked against this completed square to
/// 1e-10 (relative to the term magnitudes); a mismatch or a nonpositive
/// entry throws ConsistencyError.
LambdaSpectrum lambda_spectrum(const SeparatedRealization& r, const Constellation& c,
                               double sigma_s_sq, double sigma_v4_sq);

/// Equiprobable cut-off rate of one realization, in the log domain.
double cutoff_rate_realization_sep(const LambdaSpectrum& lambda);

/// (1/M) E of cutoff_rate_realization_sep.
CapacityEstimate c4_lower(const Scenario& sc, const TrialPlan& plan);

/// (1/M) E log2(1 + SNR_B4 Theta124)
CapacityEstimate c4_upper(const Scenario& sc, const TrialPlan& plan);

/// (1/M) log2(1 + SNR_B4 M sigma_s^2 (d12 d24)^{-eta})
double c4_upper_large_m(const Scenario& sc);

/// prod_m sqrt(1 - (cross(m)/common(m))^2), evaluated as a sum of logs.
/// Throws ConsistencyError if |cross| > common anywhere.
double bpsk_product_factor(std::span<const double> lambda_common, std::span<const double> lambda_cross);

/// BPSK cut-off rate 1 - log2(1 + product).
double bpsk_cutoff_from_product(double product);

/// Common and cross parts of the BPSK variances of one realization.
void bpsk_lambda_parts(const SeparatedRealization& r, double alpha, double sigma_s_sq,
                       double sigma_v4_sq, std::vector<double>& common, std::vector<double>& cross);

/// D = (d12 d24 / d14)^eta / alpha^2 with d24 from the cosine law.
double d_ratio(double d12, double d14, double theta, double eta, double alpha);

/// J = 1 / (1 + 2/D + D)
double j_of_d(double d);
double j_function(double d12, double d14, double theta, double eta, double alpha);

/// (1/M) [1 - log2(1 + (1 - J)^{M/2})]
double bpsk_lower_closed_form(double j, std::size_t m);
/// Scenario form; requires a BPSK constellation.
double bpsk_lower_closed_form(const Scenario& sc);

}  // namespace ambsim
