// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace ambsim {

/// Baseband-equivalent complex sample.
using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr double kLog2E = std::numbers::log2e;

/// Exponential integral Ei(x) = int_{-inf}^{x} e^u/u du for x < 0.
///
/// Power series for |x| <= 1, Lentz continued fraction beyond. Throws
/// std::domain_error for x >= 0 or non-finite x. Values below the double
/// range (|x| > ~745) flush to zero.
double ei_negative(double x);

/// e^t E1(t) = -e^t Ei(-t) for t > 0. Stays representable where Ei(-t)
/// underflows; this is the kernel every capacity formula goes through.
double scaled_e1(double t);

/// -e^{1/x} Ei(-1/x) in nats for x >= 0, with exi(0) = 0.
///
/// Strictly increasing; exi(x) ~ x as x -> 0 and ~ ln(1+x) - gamma as
/// x -> inf. Throws std::domain_error for x < 0 or NaN.
double exi(double x);

/// Table of the M-th roots of unity w^k = e^{-j 2 pi k / M}, indexed mod M.
class RootsOfUnity {
 public:
  explicit RootsOfUnity(std::size_t m);

  std::size_t size() const noexcept { return table_.size(); }

  /// e^{-j 2 pi k / M}; k is reduced mod M.
  cplx forward(std::size_t k) const noexcept { return table_[k % table_.size()]; }
  /// e^{+j 2 pi k / M}
  cplx inverse(std::size_t k) const noexcept { return std::conj(forward(k)); }

 private:
  CVector table_;
};

/// Unitary (1/sqrt(M)-normalized) DFT, or IDFT when `inverse` is set.
/// Direct O(M^2) evaluation of the matrix definition.
CVector unitary_dft(std::span<const cplx> v, bool inverse = false);

}  // namespace ambsim
