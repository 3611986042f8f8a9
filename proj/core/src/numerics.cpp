// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ambsim {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 100000;

// Below this argument the power series is used; above it the continued
// fraction. At t = 1 the series loses under one digit to cancellation and
// the fraction converges in a few dozen steps.
constexpr double kSeriesCutoff = 1.0;

// Sum_{k>=1} (-t)^k / (k k!)
double e1_series_tail(double t) {
  double sum = 0.0;
  double fact = 1.0;  // (-t)^k / k!
  for (int k = 1; k < kMaxIter; ++k) {
    fact *= -t / k;
    const double term = fact / k;
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

// e^t E1(t) by modified Lentz on the even continued fraction, t > 1.
double scaled_e1_fraction(double t) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = t + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) {
      return h;
    }
  }
  throw std::runtime_error("scaled_e1: continued fraction failed to converge");
}

double e1_series(double t) { return -kEulerGamma - std::log(t) - e1_series_tail(t); }

}  // namespace

double ei_negative(double x) {
  if (!std::isfinite(x) || x >= 0.0) {
    throw std::domain_error("ei_negative: argument must be finite and negative");
  }
  const double t = -x;
  if (t <= kSeriesCutoff) {
    return -e1_series(t);
  }
  return -scaled_e1_fraction(t) * std::exp(-t);
}

double scaled_e1(double t) {
  if (std::isnan(t) || t <= 0.0) {
    throw std::domain_error("scaled_e1: argument must be positive");
  }
  if (std::isinf(t)) {
    return 0.0;
  }
  if (t <= kSeriesCutoff) {
    return std::exp(t) * e1_series(t);
  }
  return scaled_e1_fraction(t);
}

double exi(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw std::domain_error("exi: argument must be nonnegative");
  }
  if (x == 0.0) {
    return 0.0;
  }
  const double t = 1.0 / x;
  if (std::isinf(t)) {
    return x;
  }
  return scaled_e1(t);
}

RootsOfUnity::RootsOfUnity(std::size_t m) : table_(m) {
  if (m == 0) {
    throw std::invalid_argument("RootsOfUnity: size must be positive");
  }
  const double step = -2.0 * std::numbers::pi / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    table_[k] = std::polar(1.0, step * static_cast<double>(k));
  }
}

CVector unitary_dft(std::span<const cplx> v, bool inverse) {
  const std::size_t m = v.size();
  if (m == 0) {
    throw std::invalid_argument("unitary_dft: empty input");
  }
  const RootsOfUnity w(m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  CVector out(m);
  for (std::size_t k = 0; k < m; ++k) {
    cplx acc{0.0, 0.0};
    for (std::size_t n = 0; n < m; ++n) {
      const std::size_t idx = (k * n) % m;
      acc += v[n] * (inverse ? w.inverse(idx) : w.forward(idx));
    }
    out[k] = acc * scale;
  }
  return out;
}

}  // namespace ambsim
