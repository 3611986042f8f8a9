// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "ambsim/channel.hpp"
#include "ambsim/mc_engine.hpp"
#include "ambsim/numerics.hpp"
#include "ambsim/oracle.hpp"
#include "ambsim/scenario.hpp"

namespace ambsim::testing {

// e^t E1(t) = int_0^inf e^{-u} / (u + t) du, by double-exponential quadrature.
inline double scaled_e1_quadrature(double t) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([t](double u) { return std::exp(-u) / (u + t); }, 0.0,
                              std::numeric_limits<double>::infinity(), 1e-15);
}

// Ei(-t) = -int_t^inf e^{-u}/u du, integrated from the left endpoint.
inline double ei_negative_quadrature(double t) {
  return -std::exp(-t) * scaled_e1_quadrature(t);
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return g;
}

// Random frame/link timing: M in {8,16,32}, orders <= 4, offsets <= 2,
// resampled until every CP, IBI and composite condition holds.
inline Scenario random_valid_scenario(RandomStream& rng) {
  static constexpr std::size_t kM[] = {8, 16, 32};
  for (;;) {
    Scenario sc;
    sc.frame.m = kM[rng.uniform_index(3)];
    for (auto& l : sc.links) {
      l.order = static_cast<int>(rng.uniform_index(5));
      l.time_offset = static_cast<int>(rng.uniform_index(3));
    }
    auto span = [&](LinkId id) { return sc.link(id).order + sc.link(id).time_offset; };
    const int need = std::max({span(LinkId::k13), span(LinkId::k12) + span(LinkId::k23),
                               span(LinkId::k14), span(LinkId::k24),
                               span(LinkId::k12) + span(LinkId::k24), span(LinkId::k11),
                               span(LinkId::k12) + span(LinkId::k21), 1});
    sc.frame.cp = static_cast<std::size_t>(need) + rng.uniform_index(3);
    sc.geometry.d12 = 0.05 + 0.9 * rng.uniform();
    sc.geometry.phi = 2.0 * std::numbers::pi * rng.uniform();
    sc.geometry.theta = 2.0 * std::numbers::pi * rng.uniform();
    sc.constellation = standard_constellation(
        static_cast<ConstellationKind>(rng.uniform_index(3)), rng.uniform());
    if (!sc.first_violation()) return sc;
  }
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double golden_section_max(auto f, double lo, double hi, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  while (b - a > tol) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

struct OracleDraw {
  ChannelDraw channel;
  FrameInputs in;
};

// One channel draw plus three legacy blocks, two backscatter symbols and
// noise on every receiver.
inline OracleDraw random_frame(const Scenario& sc, RandomStream& rng) {
  OracleDraw d;
  d.channel = draw_channel(sc, rng);
  const std::size_t m = sc.frame.m;
  const std::size_t p = sc.frame.p();
  d.in.s_curr = draw_complex_normal(m, sc.sigma_s_sq, rng);
  d.in.s_prev = draw_complex_normal(m, sc.sigma_s_sq, rng);
  d.in.s_prev2 = draw_complex_normal(m, sc.sigma_s_sq, rng);
  const auto& pts = sc.constellation.points();
  d.in.b_curr = pts[draw_symbol_index(sc.constellation, rng)];
  d.in.b_prev = pts[draw_symbol_index(sc.constellation, rng)];
  d.in.noise3 = draw_complex_normal(p, 0.01, rng);
  d.in.noise4 = draw_complex_normal(p, 0.01, rng);
  d.in.nu = 0.8 * rng.uniform() - 0.4;
  d.in.frame_index = static_cast<std::int64_t>(rng.uniform_index(1000));
  return d;
}

// |lrx_demodulate(r3) - (Psi3 s + DFT noise)|_inf
inline double lrx_equivalence_error(const Scenario& sc, const OracleDraw& d) {
  const FrameSignals sig = propagate_frame(d.channel, sc, d.in);
  const CVector r3 = lrx_demodulate(sig.r3_time, sc.frame);
  const std::size_t m = sc.frame.m;
  const CVector psi13 = freq_response(d.channel.c13, sc.link(LinkId::k13).time_offset, m);
  const CVector psi12 = freq_response(d.channel.c12, sc.link(LinkId::k12).time_offset, m);
  const CVector psi23 = freq_response(d.channel.c23, sc.link(LinkId::k23).time_offset, m);
  const CVector psi3 = composite_legacy_response(psi13, psi12, psi23, sc.alpha(), d.in.b_curr);
  const CVector v3 = unitary_dft(std::span<const cplx>(d.in.noise3).subspan(sc.frame.cp));
  CVector model(m);
  for (std::size_t k = 0; k < m; ++k) model[k] = psi3[k] * d.in.s_curr[k] + v3[k];
  return max_abs_diff(r3, model);
}

// |brx_reduce(r4) - (alpha b IDFT(Psi12 Psi24 s) + IDFT(Psi14 s) + rotated noise)|_inf
inline double brx_equivalence_error(const Scenario& sc, const OracleDraw& d) {
  const FrameSignals sig = propagate_frame(d.channel, sc, d.in);
  const CVector r4 = brx_reduce(sig.r4_time, sc.frame, d.in.nu, d.in.frame_index);
  const std::size_t m = sc.frame.m;
  const std::size_t cp = sc.frame.cp;
  const CVector psi12 = freq_response(d.channel.c12, sc.link(LinkId::k12).time_offset, m);
  const CVector psi24 = freq_response(d.channel.c24, sc.link(LinkId::k24).time_offset, m);
  const CVector psi14 = freq_response(d.channel.c14, sc.link(LinkId::k14).time_offset, m);
  CVector back(m);
  CVector direct(m);
  for (std::size_t k = 0; k < m; ++k) {
    back[k] = psi12[k] * psi24[k] * d.in.s_curr[k];
    direct[k] = psi14[k] * d.in.s_curr[k];
  }
  const CVector tb = unitary_dft(back, true);
  const CVector td = unitary_dft(direct, true);
  const double start = static_cast<double>(d.in.frame_index) * static_cast<double>(sc.frame.p()) +
                       static_cast<double>(cp);
  CVector model(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double phase = -2.0 * std::numbers::pi * d.in.nu * (start + static_cast<double>(i)) /
                         static_cast<double>(m);
    model[i] = sc.alpha() * d.in.b_curr * tb[i] + td[i] + d.in.noise4[cp + i] * std::polar(1.0, phase);
  }
  return max_abs_diff(r4, model);
}

inline bool rows_zero_from(const Eigen::MatrixXcd& a, Eigen::Index first) {
  for (Eigen::Index i = first; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != cplx(0.0, 0.0)) return false;
    }
  }
  return true;
}

// Bit-exact zero-block identities of the frame model for one draw. Returns
// the name of the first identity that fails, or an empty string.
inline std::string structural_zero_failure(const Scenario& sc, const ChannelDraw& d, double nu) {
  const std::size_t p = sc.frame.p();
  const auto cp = static_cast<Eigen::Index>(sc.frame.cp);
  auto pair = [&](const CVector& taps, LinkId id) {
    return shift_toeplitz_pair(taps, sc.link(id).time_offset, p);
  };
  auto span = [&](LinkId id) {
    return static_cast<Eigen::Index>(sc.link(id).order + sc.link(id).time_offset);
  };
  const std::pair<const CVector*, LinkId> links[] = {
      {&d.c12, LinkId::k12}, {&d.c13, LinkId::k13}, {&d.c23, LinkId::k23},
      {&d.c14, LinkId::k14}, {&d.c24, LinkId::k24}, {&d.c21, LinkId::k21},
      {&d.c11, LinkId::k11}};
  for (const auto& [taps, id] : links) {
    const ToeplitzPair t = pair(*taps, id);
    if (!rows_zero_from(t.c1, span(id))) return "C1 rows below L+theta, link " + std::string(to_string(id));
  }
  const ToeplitzPair t12 = pair(d.c12, LinkId::k12);
  const ToeplitzPair t23 = pair(d.c23, LinkId::k23);
  const ToeplitzPair t24 = pair(d.c24, LinkId::k24);
  const ToeplitzPair t14 = pair(d.c14, LinkId::k14);
  const Eigen::MatrixXcd a = t23.c0 * t12.c1;
  if (!rows_zero_from(a, span(LinkId::k12) + span(LinkId::k23))) return "C23^0 C12^1 tail rows";
  // Sigma_nu scales rows by unit-modulus factors, so it keeps zero rows zero.
  const CVector ramp = cfo_ramp(nu, sc.frame);
  Eigen::VectorXcd sigma(static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) sigma[static_cast<Eigen::Index>(i)] = ramp[i];
  const Eigen::MatrixXcd b = sigma.asDiagonal() * (t24.c1 * t12.c0);
  if (!rows_zero_from(b, cp)) return "R_b Sigma C24^1 C12^0";
  const Eigen::MatrixXcd c = sigma.asDiagonal() * (t24.c0 * t12.c1);
  if (!rows_zero_from(c, cp)) return "R_b Sigma C24^0 C12^1";
  const Eigen::MatrixXcd e = sigma.asDiagonal() * t14.c1;
  if (!rows_zero_from(e, cp)) return "R_b Sigma C14^1";
  return {};
}

}  // namespace ambsim::testing
