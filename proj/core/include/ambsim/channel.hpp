// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <cstddef>
#include <span>

#include "ambsim/mc_engine.hpp"
#include "ambsim/numerics.hpp"

namespace ambsim {

/// One discrete-time link: causal FIR of order L with integer time offset
/// and total power `variance` spread evenly over the L+1 taps.
struct LinkSpec {
  int order = 0;
  int time_offset = 0;
  double variance = 1.0;

  double tap_variance() const noexcept { return variance / (order + 1); }
};

/// Node placement in normalized units. Node 1 is the legacy transmitter,
/// 2 the backscatter transmitter, 3 the legacy receiver, 4 the backscatter
/// receiver. `phi` is the angle at node 1 between nodes 2 and 3; `theta` the
/// angle at node 1 between nodes 2 and 4.
struct NetworkGeometry {
  double d12 = 0.2;
  double d13 = 1.0;
  double d14 = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  double eta = 3.0;

  double d23() const;
  double d24() const;
  void validate() const;
};

/// One joint realization of every link's taps for a coherence interval.
struct ChannelDraw {
  CVector c12, c13, c23, c14, c24, c21, c11;
};

/// sigma^2 = d^{-eta}
double path_loss_variance(double d, double eta);

/// Third side of a triangle: sqrt(a^2 + b^2 - 2ab cos(angle)).
double carnot_distance(double a, double b, double angle);

struct MobilityExtrema {
  bool in_set_a = false;
  double d_min = 0.0;  // NaN when in_set_a
  double d_max = 0.0;  // NaN when in_set_a
};

/// Stationary points of d -> d * carnot(d, 1, angle) (normalized distance),
/// i.e. roots of 2d^2 - 3 cos(angle) d + 1 = 0. `in_set_a` holds when
/// 9cos^2 - 8 < 0 and the product is monotone.
MobilityExtrema mobility_extrema(double angle);

/// L+1 i.i.d. CN(0, variance/(L+1)) taps.
CVector draw_taps(const LinkSpec& spec, RandomStream& rng);

/// Psi(m) = e^{-j2pi theta m/M} sum_l c(l) e^{-j2pi l m/M}, m = 0..M-1.
CVector freq_response(std::span<const cplx> taps, int theta, std::size_t m);
CVector freq_response(std::span<const cplx> taps, int theta, const RootsOfUnity& roots);

/// Psi3(m) = Psi13(m) + alpha b Psi12(m) Psi23(m).
CVector composite_legacy_response(std::span<const cplx> psi13, std::span<const cplx> psi12,
                                  std::span<const cplx> psi23, double alpha, cplx b);

/// Linear convolution of two tap vectors.
CVector cascade_taps(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace ambsim
