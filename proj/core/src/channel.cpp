// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ambsim {

double NetworkGeometry::d23() const { return carnot_distance(d12, d13, phi); }
double NetworkGeometry::d24() const { return carnot_distance(d12, d14, theta); }

void NetworkGeometry::validate() const {
  if (!(d12 > 0.0 && d13 > 0.0 && d14 > 0.0)) {
    throw std::invalid_argument("geometry: distances d12, d13, d14 must be positive");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("geometry: path-loss exponent must be positive");
  }
  (void)d23();
  (void)d24();
}

double path_loss_variance(double d, double eta) {
  if (!(d > 0.0)) throw std::invalid_argument("path_loss_variance: distance must be positive");
  return std::pow(d, -eta);
}

double carnot_distance(double a, double b, double angle) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("carnot_distance: sides must be positive");
  const double sq = a * a + b * b - 2.0 * a * b * std::cos(angle);
  const double d = std::sqrt(std::max(0.0, sq));
  if (!(d > 0.0)) throw std::invalid_argument("carnot_distance: coincident nodes");
  return d;
}

MobilityExtrema mobility_extrema(double angle) {
  const double c = std::cos(angle);
  const double disc = 9.0 * c * c - 8.0;
  MobilityExtrema out;
  if (disc < 0.0) {
    out.in_set_a = true;
    out.d_min = std::numeric_limits<double>::quiet_NaN();
    out.d_max = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double r = std::sqrt(disc);
  out.d_min = std::max(0.0, (3.0 * c - r) / 4.0);
  out.d_max = std::max(0.0, (3.0 * c + r) / 4.0);
  return out;
}

CVector draw_taps(const LinkSpec& spec, RandomStream& rng) {
  if (spec.order < 0) throw std::invalid_argument("draw_taps: negative order");
  const double var = spec.tap_variance();
  CVector taps(static_cast<std::size_t>(spec.order) + 1);
  for (auto& c : taps) c = rng.complex_normal(var);
  return taps;
}

CVector freq_response(std::span<const cplx> taps, int theta, const RootsOfUnity& roots) {
  const std::size_t m_count = roots.size();
  CVector psi(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    cplx acc{0.0, 0.0};
    for (std::size_t l = 0; l < taps.size(); ++l) {
      acc += taps[l] * roots.forward((l + static_cast<std::size_t>(theta)) * m);
    }
    psi[m] = acc;
  }
  return psi;
}

CVector freq_response(std::span<const cplx> taps, int theta, std::size_t m) {
  return freq_response(taps, theta, RootsOfUnity(m));
}

CVector composite_legacy_response(std::span<const cplx> psi13, std::span<const cplx> psi12,
                                  std::span<const cplx> psi23, double alpha, cplx b) {
  if (psi12.size() != psi13.size() || psi23.size() != psi13.size()) {
    throw std::invalid_argument("composite_legacy_response: length mismatch");
  }
  CVector out(psi13.begin(), psi13.end());
  const cplx g = alpha * b;
  if (g == cplx{0.0, 0.0}) return out;
  for (std::size_t m = 0; m < out.size(); ++m) out[m] += g * psi12[m] * psi23[m];
  return out;
}

CVector cascade_taps(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  CVector out(a.size() + b.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace ambsim
