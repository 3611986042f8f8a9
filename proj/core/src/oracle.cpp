// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ambsim/errors.hpp"

namespace ambsim {
namespace {

using Vec = Eigen::VectorXcd;

Vec to_eigen(std::span<const cplx> v, std::size_t n) {
  Vec out = Vec::Zero(static_cast<Eigen::Index>(n));
  if (v.empty()) return out;
  if (v.size() != n) throw std::invalid_argument("oracle: vector length mismatch");
  for (std::size_t i = 0; i < n; ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

CVector from_eigen(const Vec& v) { return CVector(v.data(), v.data() + v.size()); }

Vec modulate_or_zero(std::span<const cplx> s, const FrameConfig& frame) {
  if (s.empty()) return Vec::Zero(static_cast<Eigen::Index>(frame.p()));
  const CVector u = legacy_modulate(s, frame);
  return to_eigen(u, frame.p());
}

struct LinkPair {
  ToeplitzPair m;
  Vec apply(const Vec& curr, const Vec& prev) const { return m.c0 * curr + m.c1 * prev; }
};

LinkPair make_pair(const CVector& taps, const Scenario& sc, LinkId id) {
  return {shift_toeplitz_pair(taps, sc.link(id).time_offset, sc.frame.p())};
}

}  // namespace

ToeplitzPair shift_toeplitz_pair(std::span<const cplx> taps, int theta, std::size_t p) {
  const long order = static_cast<long>(taps.size()) - 1;
  const long pl = static_cast<long>(p);
  if (taps.empty() || theta < 0 || order + theta > pl - 1) {
    std::ostringstream os;
    os << "IBI condition: P-1 >= L+theta violated: " << pl - 1 << " < " << order + theta;
    throw ConditionViolation(os.str());
  }
  const auto n = static_cast<Eigen::Index>(p);
  ToeplitzPair out{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
  for (long i = 0; i < pl; ++i) {
    for (long j = 0; j < pl; ++j) {
      const long l0 = i - j - theta;
      if (l0 >= 0 && l0 <= order) out.c0(i, j) = taps[static_cast<std::size_t>(l0)];
      const long l1 = i - j + pl - theta;
      if (l1 >= 0 && l1 <= order) out.c1(i, j) = taps[static_cast<std::size_t>(l1)];
    }
  }
  return out;
}

CVector cfo_ramp(double nu, const FrameConfig& frame) {
  CVector ramp(frame.p());
  const double m = static_cast<double>(frame.m);
  for (std::size_t i = 0; i < ramp.size(); ++i) {
    ramp[i] = std::polar(1.0, 2.0 * std::numbers::pi * nu * static_cast<double>(i) / m);
  }
  return ramp;
}

CVector legacy_modulate(std::span<const cplx> s, const FrameConfig& frame) {
  if (s.size() != frame.m) throw std::invalid_argument("legacy_modulate: expected M symbols");
  const CVector w = unitary_dft(s, true);
  CVector u(frame.p());
  for (std::size_t i = 0; i < frame.cp; ++i) u[i] = w[frame.m - frame.cp + i];
  for (std::size_t i = 0; i < frame.m; ++i) u[frame.cp + i] = w[i];
  return u;
}

FrameSignals propagate_frame(const ChannelDraw& draw, const Scenario& sc, const FrameInputs& in) {
  sc.validate();
  const FrameConfig& frame = sc.frame;
  const std::size_t p = frame.p();

  const Vec u_n = modulate_or_zero(in.s_curr, frame);
  const Vec u_n1 = modulate_or_zero(in.s_prev, frame);
  const Vec u_n2 = modulate_or_zero(in.s_prev2, frame);

  const LinkPair h12 = make_pair(draw.c12, sc, LinkId::k12);
  const LinkPair h13 = make_pair(draw.c13, sc, LinkId::k13);
  const LinkPair h23 = make_pair(draw.c23, sc, LinkId::k23);
  const LinkPair h14 = make_pair(draw.c14, sc, LinkId::k14);
  const LinkPair h24 = make_pair(draw.c24, sc, LinkId::k24);

  const Vec r2_n = h12.apply(u_n, u_n1);
  const Vec r2_n1 = h12.apply(u_n1, u_n2);
  const cplx g_n = sc.alpha() * in.b_curr;
  const cplx g_n1 = sc.alpha() * in.b_prev;
  const Vec x2_n = g_n * r2_n;
  const Vec x2_n1 = g_n1 * r2_n1;

  const Vec r3 = h13.apply(u_n, u_n1) + h23.apply(x2_n, x2_n1) + to_eigen(in.noise3, p);

  const Vec clean4 = h14.apply(u_n, u_n1) + h24.apply(x2_n, x2_n1);
  const CVector ramp = cfo_ramp(in.nu, frame);
  const double frame_phase = 2.0 * std::numbers::pi * in.nu *
                             static_cast<double>(in.frame_index) * static_cast<double>(p) /
                             static_cast<double>(frame.m);
  const cplx rot = std::polar(1.0, frame_phase);
  Vec r4 = to_eigen(in.noise4, p);
  for (std::size_t i = 0; i < p; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    r4[k] += rot * ramp[i] * clean4[k];
  }

  FrameSignals out;
  out.u_curr = from_eigen(u_n);
  out.u_prev = from_eigen(u_n1);
  out.r2 = from_eigen(r2_n);
  out.x2 = from_eigen(x2_n);
  out.r3_time = from_eigen(r3);
  out.r4_time = from_eigen(r4);
  return out;
}

CVector lrx_demodulate(std::span<const cplx> r3_time, const FrameConfig& frame) {
  if (r3_time.size() != frame.p()) throw std::invalid_argument("lrx_demodulate: expected P samples");
  return unitary_dft(r3_time.subspan(frame.cp), false);
}

CVector brx_reduce(std::span<const cplx> r4_time, const FrameConfig& frame, double nu,
                   std::int64_t n) {
  if (r4_time.size() != frame.p()) throw std::invalid_argument("brx_reduce: expected P samples");
  CVector out(frame.m);
  const double m = static_cast<double>(frame.m);
  const double base = static_cast<double>(n) * static_cast<double>(frame.p()) +
                      static_cast<double>(frame.cp);
  for (std::size_t i = 0; i < frame.m; ++i) {
    const double phase = -2.0 * std::numbers::pi * nu * (base + static_cast<double>(i)) / m;
    out[i] = r4_time[frame.cp + i] * std::polar(1.0, phase);
  }
  return out;
}

CVector propagate_colocated(const ChannelDraw& draw, const Scenario& sc, const FrameInputs& in,
                            std::span<const cplx> noise1) {
  sc.validate();
  const FrameConfig& frame = sc.frame;
  const std::size_t p = frame.p();
  const Vec u_n = modulate_or_zero(in.s_curr, frame);
  const Vec u_n1 = modulate_or_zero(in.s_prev, frame);
  const Vec u_n2 = modulate_or_zero(in.s_prev2, frame);

  const LinkPair h12 = make_pair(draw.c12, sc, LinkId::k12);
  const LinkPair h21 = make_pair(draw.c21, sc, LinkId::k21);
  const LinkPair h11 = make_pair(draw.c11, sc, LinkId::k11);

  const Vec x2_n = (sc.alpha() * in.b_curr) * h12.apply(u_n, u_n1);
  const Vec x2_n1 = (sc.alpha() * in.b_prev) * h12.apply(u_n1, u_n2);
  const Vec r1 = h11.apply(u_n, u_n1) + h21.apply(x2_n, x2_n1) + to_eigen(noise1, p);
  return from_eigen(r1);
}

CVector colocated_reduce(std::span<const cplx> r1_time, const ChannelDraw& draw,
                         const Scenario& sc, std::span<const cplx> s_curr) {
  const FrameConfig& frame = sc.frame;
  const std::size_t p = frame.p();
  const Vec u_n = modulate_or_zero(s_curr, frame);
  const ToeplitzPair h11 = shift_toeplitz_pair(draw.c11, sc.link(LinkId::k11).time_offset, p);
  const Vec cleaned = to_eigen(r1_time, p) - h11.c0 * u_n;
  const CVector c = from_eigen(cleaned);
  return lrx_demodulate(c, frame);
}

}  // namespace ambsim
