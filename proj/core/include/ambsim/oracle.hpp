// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "ambsim/channel.hpp"
#include "ambsim/scenario.hpp"

namespace ambsim {

/// Time-domain reference model of one legacy frame, built from dense P x P
/// matrices. Slow by design; the frequency-domain estimators are checked
/// against it.

struct ToeplitzPair {
  Eigen::MatrixXcd c0;  // current-frame part, lower triangular
  Eigen::MatrixXcd c1;  // previous-frame (IBI) part, upper triangular
};

/// C0 = sum_l c(l) F^{l+theta}, C1 = sum_l c(l) B^{P-l-theta}.
/// Requires L + theta <= P - 1.
ToeplitzPair shift_toeplitz_pair(std::span<const cplx> taps, int theta, std::size_t p);

/// Diag(1, e^{j2pi nu/M}, ..., e^{j2pi nu (P-1)/M}) as a vector.
CVector cfo_ramp(double nu, const FrameConfig& frame);

/// u = T_cp * IDFT(s), unitary IDFT.
CVector legacy_modulate(std::span<const cplx> s, const FrameConfig& frame);

struct FrameInputs {
  CVector s_curr;   // s(n)
  CVector s_prev;   // s(n-1)
  CVector s_prev2;  // s(n-2), feeds r2(n-1); empty means zero
  cplx b_curr{0.0, 0.0};
  cplx b_prev{0.0, 0.0};
  CVector noise3;  // length P; empty means zero
  CVector noise4;  // length P; empty means zero
  double nu = 0.0;
  std::int64_t frame_index = 0;
};

struct FrameSignals {
  CVector u_curr, u_prev;
  CVector r2, x2;  // node 2 input and reflected block of frame n
  CVector r3_time, r4_time;
};

/// Propagates frame n through links 12, 13, 23, 14, 24 including both IBI
/// terms, the reflection x2 = alpha b r2, noise and the BRx CFO.
/// Throws ConditionViolation if the scenario conditions fail.
FrameSignals propagate_frame(const ChannelDraw& draw, const Scenario& sc, const FrameInputs& in);

/// Drop the CP and apply the unitary DFT.
CVector lrx_demodulate(std::span<const cplx> r3_time, const FrameConfig& frame);

/// Drop L_b = L_cp samples and counter-rotate by e^{-j2pi nu (nP + L_cp + i)/M}.
CVector brx_reduce(std::span<const cplx> r4_time, const FrameConfig& frame, double nu,
                   std::int64_t n);

/// Co-located receive block at node 1: self-interference through link 11
/// plus the backscattered path 1 -> 2 -> 1 and noise.
CVector propagate_colocated(const ChannelDraw& draw, const Scenario& sc, const FrameInputs& in,
                            std::span<const cplx> noise1);

/// Subtracts the known C11^(0) u(n), drops the CP and applies the unitary
/// DFT, leaving alpha b psi + noise with psi(m) = Psi12(m) Psi21(m) s(m).
CVector colocated_reduce(std::span<const cplx> r1_time, const ChannelDraw& draw,
                         const Scenario& sc, std::span<const cplx> s_curr);

}  // namespace ambsim
