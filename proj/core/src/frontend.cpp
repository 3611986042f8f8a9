// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ambsim/errors.hpp"

namespace ambsim {
namespace {

constexpr double kTol = 1e-12;

}  // namespace

ConstellationKind parse_constellation_kind(std::string_view name) {
  if (name == "BPSK" || name == "bpsk") return ConstellationKind::BPSK;
  if (name == "QPSK" || name == "qpsk") return ConstellationKind::QPSK;
  if (name == "ASK4" || name == "ask4") return ConstellationKind::ASK4;
  throw std::invalid_argument("unknown constellation kind '" + std::string(name) + "'");
}

std::string_view to_string(ConstellationKind kind) {
  switch (kind) {
    case ConstellationKind::BPSK: return "BPSK";
    case ConstellationKind::QPSK: return "QPSK";
    case ConstellationKind::ASK4: return "ASK4";
  }
  return "?";
}

AskNormalization parse_ask_normalization(std::string_view name) {
  if (name == "max_amplitude") return AskNormalization::MaxAmplitude;
  if (name == "unit_energy") return AskNormalization::UnitEnergy;
  throw std::invalid_argument("unknown ASK normalization '" + std::string(name) + "'");
}

std::string_view to_string(AskNormalization norm) {
  return norm == AskNormalization::MaxAmplitude ? "max_amplitude" : "unit_energy";
}

Constellation::Constellation(std::vector<cplx> points, std::vector<double> probabilities,
                             double alpha, bool amplitude_constrained)
    : points_(std::move(points)),
      probabilities_(std::move(probabilities)),
      alpha_(alpha),
      amplitude_constrained_(amplitude_constrained) {
  if (points_.empty()) {
    throw std::invalid_argument("Constellation: no points");
  }
  if (points_.size() != probabilities_.size()) {
    throw std::invalid_argument("Constellation: points/probabilities size mismatch");
  }
  if (!(alpha_ >= 0.0 && alpha_ <= 1.0)) {
    throw std::invalid_argument("Constellation: alpha must lie in [0, 1]");
  }
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("Constellation: negative probability");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kTol) {
    throw std::invalid_argument("Constellation: probabilities do not sum to 1");
  }
  for (std::size_t q = 0; q < points_.size(); ++q) {
    if (amplitude_constrained_ && std::abs(points_[q]) > 1.0 + kTol) {
      throw std::invalid_argument("Constellation: amplitude constraint |beta| <= 1 violated");
    }
    energy_ += probabilities_[q] * std::norm(points_[q]);
  }
  min_distance_ = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t b = a + 1; b < points_.size(); ++b) {
      min_distance_ = std::min(min_distance_, std::abs(points_[a] - points_[b]));
    }
  }
  if (points_.size() > 1 && !(min_distance_ > 0.0)) {
    throw std::invalid_argument("Constellation: points must be pairwise distinct");
  }
  if (points_.size() == 1) {
    min_distance_ = 0.0;
  }
}

Constellation Constellation::equiprobable(std::vector<cplx> points, double alpha,
                                          bool amplitude_constrained) {
  std::vector<double> p(points.size(), 1.0 / static_cast<double>(points.size()));
  return Constellation(std::move(points), std::move(p), alpha, amplitude_constrained);
}

bool Constellation::constant_modulus() const noexcept {
  const double r = std::abs(points_.front());
  return std::all_of(points_.begin(), points_.end(),
                     [r](cplx b) { return std::abs(std::abs(b) - r) <= kTol; });
}

bool Constellation::equiprobable_pmf() const noexcept {
  const double p0 = probabilities_.front();
  return std::all_of(probabilities_.begin(), probabilities_.end(),
                     [p0](double p) { return std::abs(p - p0) <= kTol; });
}

Constellation Constellation::with_alpha(double alpha) const {
  return Constellation(points_, probabilities_, alpha, amplitude_constrained_);
}

ReflectionCoefficient reflection_from_symbol(const Constellation& c, std::size_t q) {
  if (q >= c.size()) {
    throw std::out_of_range("reflection_from_symbol: symbol index out of range");
  }
  return {c.alpha() * c.points()[q]};
}

Impedance chip_impedance(Impedance za, ReflectionCoefficient gamma) {
  if (std::abs(gamma.value) > 1.0 + kTol) {
    throw std::invalid_argument("chip_impedance: |Gamma| > 1 is not passive");
  }
  const cplx den = 1.0 + gamma.value;
  if (std::abs(den) == 0.0) {
    throw DegenerateCircuit("chip_impedance: Gamma = -1 (open circuit)");
  }
  const cplx z = za.value();
  const cplx zc = (std::conj(z) - z * gamma.value) / den;
  // |Gamma| = 1 lands exactly on Re(Zc) = 0; keep rounding from making it negative.
  const double r = std::abs(zc.real()) <= kTol * std::abs(z) ? 0.0 : zc.real();
  return {r, zc.imag()};
}

ReflectionCoefficient reflection_from_impedance(Impedance za, Impedance zc) {
  const cplx den = za.value() + zc.value();
  if (std::abs(den) == 0.0) {
    throw DegenerateCircuit("reflection_from_impedance: Za + Zc = 0");
  }
  return {(std::conj(za.value()) - zc.value()) / den};
}

double harvested_fraction(ReflectionCoefficient gamma) { return 1.0 - std::norm(gamma.value); }

Constellation standard_constellation(ConstellationKind kind, double alpha,
                                     AskNormalization ask_norm) {
  switch (kind) {
    case ConstellationKind::BPSK:
      return Constellation::equiprobable({{1.0, 0.0}, {-1.0, 0.0}}, alpha);
    case ConstellationKind::QPSK: {
      std::vector<cplx> pts;
      for (int k = 0; k < 4; ++k) {
        pts.push_back(std::polar(1.0, std::numbers::pi / 4.0 + k * std::numbers::pi / 2.0));
      }
      return Constellation::equiprobable(std::move(pts), alpha);
    }
    case ConstellationKind::ASK4: {
      // Symmetric {+-1, +-1/3} lattice; UnitEnergy rescales by 3/sqrt(5).
      const double lambda = ask_norm == AskNormalization::MaxAmplitude ? 1.0 : 3.0 / std::sqrt(5.0);
      std::vector<cplx> pts{{-lambda, 0.0}, {-lambda / 3.0, 0.0}, {lambda / 3.0, 0.0}, {lambda, 0.0}};
      return Constellation::equiprobable(std::move(pts), alpha,
                                         ask_norm == AskNormalization::MaxAmplitude);
    }
  }
  throw std::invalid_argument("standard_constellation: unknown kind");
}

}  // namespace ambsim
