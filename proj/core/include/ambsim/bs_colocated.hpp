// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <cstddef>

#include "ambsim/frontend.hpp"
#include "ambsim/mc_engine.hpp"
#include "ambsim/scenario.hpp"

namespace ambsim {

/// Backscatter receiver co-located with the legacy transmitter: it knows
/// s(n) and observes z1 = alpha ||psi||^2 b + noise after matched filtering.

struct ColocatedRealization {
  CVector psi;             // Psi12(m) Psi21(m) s(m)
  double theta121 = 0.0;   // ||psi||^2
  double snr_b1 = 0.0;     // alpha^2 sigma_b^2 / sigma_v1^2
};

/// Draws s ~ CN(0, sigma_s^2 I) and the 1->2, 2->1 responses according to
/// sc.sampling. Draw order: s, then link 12, then link 21.
ColocatedRealization draw_colocated_realization(const Scenario& sc, RandomStream& rng);

/// Builds a realization from given vectors.
ColocatedRealization make_colocated_realization(std::span<const cplx> psi12,
                                                std::span<const cplx> psi21,
                                                std::span<const cplx> s, double snr_b1);

/// (1/M) E log2(1 + SNR_B1 Theta121)
CapacityEstimate c1_upper(const Scenario& sc, const TrialPlan& plan);

/// (1/M) log2(1 + SNR_B1 M sigma_s^2 d12^{-2 eta})
double c1_upper_large_m(const Scenario& sc);

/// True when every point sees the same multiset of distances to the others
/// (PSK and other geometrically uniform sets).
bool distance_invariant(const Constellation& c);

/// -log2 sum_{q1,q2} p p exp(-Theta SNR |beta_q1 - beta_q2|^2 / (4 sigma_b^2))
double cutoff_rate_realization(const Constellation& c, double theta121, double snr_b1);

/// log2 Q - log2(1 + sum_{q>=2} exp(-Theta SNR |beta_1 - beta_q|^2 / (4 sigma_b^2))).
/// Equals cutoff_rate_realization for equiprobable distance-invariant sets.
double cutoff_rate_reference_point(const Constellation& c, double theta121, double snr_b1);

/// (1/M) E of the cut-off rate; the reference-point form is used for
/// equiprobable distance-invariant constellations, the double sum otherwise.
CapacityEstimate c1_lower_cutoff(const Scenario& sc, const TrialPlan& plan);

/// (1/M) E[log2 Q - log2(1 + (Q-1) exp(-Theta SNR delta_min^2 / (4 sigma_b^2)))]
CapacityEstimate c1_lower_min_distance(const Scenario& sc, const TrialPlan& plan);

struct LargeMLowerBound {
  double reference_point = 0.0;  // Theta121 -> M sigma_s^2 sigma12^4 in the PSK form
  double min_distance = 0.0;     // same plug-in in the delta_min form
};

LargeMLowerBound c1_lower_large_m(const Scenario& sc);

/// First-order small-SNR expansion of the delta_min large-M bound, in bits:
/// (1 - 1/Q) sigma_s^2 SNR_B1 delta_min^2 / (4 sigma_b^2 d12^{2 eta}) log2 e.
double c1_lower_large_m_low_snr(const Scenario& sc);

/// I(b; z1 | psi = xi) in bits by Monte Carlo over the noise, clamped to
/// [0, H(b)]. Uses the normalized mixture z = sqrt(rho) beta + w, w ~ CN(0,1),
/// rho = SNR_B1 Theta121 / sigma_b^2.
double mixture_mutual_information(const Constellation& c, const ColocatedRealization& r,
                                  std::size_t mc_samples, RandomStream& rng);

}  // namespace ambsim
