// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/legacy_capacity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ambsim/channel.hpp"

namespace ambsim {
namespace {

struct LegacyDraw {
  CVector psi13, psi12, psi23;
  cplx b;
};

// Draw order 13, 12, 23, b is shared by every legacy estimator so that runs
// with different alpha or R_s see the same channels.
LegacyDraw draw_legacy(const Scenario& sc, const RootsOfUnity& roots, RandomStream& rng) {
  LegacyDraw d;
  const CVector c13 = draw_taps(sc.link_spec(LinkId::k13), rng);
  const CVector c12 = draw_taps(sc.link_spec(LinkId::k12), rng);
  const CVector c23 = draw_taps(sc.link_spec(LinkId::k23), rng);
  d.b = sc.constellation.points()[draw_symbol_index(sc.constellation, rng)];
  d.psi13 = freq_response(c13, sc.link(LinkId::k13).time_offset, roots);
  d.psi12 = freq_response(c12, sc.link(LinkId::k12).time_offset, roots);
  d.psi23 = freq_response(c23, sc.link(LinkId::k23).time_offset, roots);
  return d;
}

}  // namespace

double c3_no_backscatter(double gamma13) {
  if (!(gamma13 >= 0.0)) throw std::domain_error("c3_no_backscatter: gamma13 must be >= 0");
  return exi(gamma13) * kLog2E;
}

double upsilon3(double gamma13, double alpha, double sigma23_sq, double sigma13_sq, cplx b,
                cplx psi12_m) {
  return gamma13 *
         (1.0 + alpha * alpha * (sigma23_sq / sigma13_sq) * std::norm(b) * std::norm(psi12_m));
}

double legacy_rate(std::span<const cplx> psi3, double snr_l) {
  double acc = 0.0;
  for (cplx v : psi3) acc += std::log2(1.0 + snr_l * std::norm(v));
  return acc / static_cast<double>(psi3.size());
}

CapacityEstimate c3_semianalytic(const Scenario& sc, const TrialPlan& plan) {
  sc.validate();
  const double gamma13 = sc.gamma13();
  const double alpha = sc.alpha();
  const double s12 = sc.link_variance(LinkId::k12);
  const double s13 = sc.link_variance(LinkId::k13);
  const double s23 = sc.link_variance(LinkId::k23);
  const std::size_t m = sc.frame.m;
  const double closed_form = c3_no_backscatter(gamma13);
  return run_estimate(plan, [&](RandomStream& rng) {
    const cplx b = sc.constellation.points()[draw_symbol_index(sc.constellation, rng)];
    if (alpha == 0.0 || b == cplx{0.0, 0.0}) return closed_form;
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double x = rng.exponential(s12);
      acc += exi(upsilon3(gamma13, alpha, s23, s13, b, std::sqrt(x)));
    }
    return acc * kLog2E / static_cast<double>(m);
  });
}

CapacityEstimate c3_mc_full(const Scenario& sc, const TrialPlan& plan) {
  sc.validate();
  const RootsOfUnity roots(sc.frame.m);
  return run_estimate(plan, [&](RandomStream& rng) {
    const LegacyDraw d = draw_legacy(sc, roots, rng);
    const CVector psi3 = composite_legacy_response(d.psi13, d.psi12, d.psi23, sc.alpha(), d.b);
    return legacy_rate(psi3, sc.snr_l);
  });
}

MultiEstimate c3_mc_paired(const Scenario& sc, const TrialPlan& plan) {
  sc.validate();
  const RootsOfUnity roots(sc.frame.m);
  return run_estimates(plan, 3, [&](RandomStream& rng, std::span<double> out) {
    const LegacyDraw d = draw_legacy(sc, roots, rng);
    const CVector psi3 = composite_legacy_response(d.psi13, d.psi12, d.psi23, sc.alpha(), d.b);
    out[0] = legacy_rate(psi3, sc.snr_l);
    out[1] = legacy_rate(d.psi13, sc.snr_l);
    out[2] = out[0] - out[1];
  });
}

double delta_c3_low_snr(const Scenario& sc) {
  const NetworkGeometry& g = sc.geometry;
  const double a2 = sc.alpha() * sc.alpha();
  return a2 * sc.sigma_b_sq() * sc.snr_l * std::pow(g.d12 * g.d23(), -g.eta) * kLog2E;
}

double omega3(const Scenario& sc) {
  const NetworkGeometry& g = sc.geometry;
  return sc.alpha() * sc.alpha() * std::pow(g.d13 / (g.d12 * g.d23()), g.eta);
}

double delta_c3_high_snr(const Scenario& sc, HighSnrVariant variant) {
  const Constellation& c = sc.constellation;
  if (!c.constant_modulus() || std::abs(std::abs(c.points().front()) - 1.0) > 1e-12) {
    throw std::invalid_argument("delta_c3_high_snr: requires a unit constant-modulus constellation");
  }
  const double gap = exi(omega3(sc)) * kLog2E;
  return variant == HighSnrVariant::Literal ? gap * kLog2E : gap;
}

CapacityEstimate outage_probability(const Scenario& sc, double rate_rs, const TrialPlan& plan) {
  sc.validate();
  if (!(rate_rs >= 0.0)) throw std::invalid_argument("outage_probability: R_s must be >= 0");
  const RootsOfUnity roots(sc.frame.m);
  return run_estimate(plan, [&](RandomStream& rng) {
    const LegacyDraw d = draw_legacy(sc, roots, rng);
    const CVector psi3 = composite_legacy_response(d.psi13, d.psi12, d.psi23, sc.alpha(), d.b);
    return legacy_rate(psi3, sc.snr_l) < rate_rs ? 1.0 : 0.0;
  });
}

void find_local_extrema(std::span<const double> values, std::vector<std::size_t>& minima,
                        std::vector<std::size_t>& maxima) {
  minima.clear();
  maxima.clear();
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double l = values[i - 1], v = values[i], r = values[i + 1];
    if (v < l && v < r) minima.push_back(i);
    if (v > l && v > r) maxima.push_back(i);
  }
}

DistanceCurve delta_c3_vs_distance(const Scenario& sc, std::span<const double> d12_grid,
                                   AsymptoteRegime regime, HighSnrVariant variant) {
  DistanceCurve curve;
  Scenario point = sc;
  for (double d12 : d12_grid) {
    if (!(d12 > 0.0)) throw std::invalid_argument("delta_c3_vs_distance: d12 must be positive");
    point.geometry.d12 = d12;
    const NetworkGeometry& g = point.geometry;
    const double d23_sq = d12 * d12 + g.d13 * g.d13 - 2.0 * d12 * g.d13 * std::cos(g.phi);
    double v = std::numeric_limits<double>::infinity();  // BTx on top of the LRx
    if (d23_sq > 0.0) {
      v = regime == AsymptoteRegime::LowSnr ? delta_c3_low_snr(point)
                                            : delta_c3_high_snr(point, variant);
    }
    curve.d12.push_back(d12);
    curve.value.push_back(v);
  }
  find_local_extrema(curve.value, curve.local_minima, curve.local_maxima);
  return curve;
}

}  // namespace ambsim
