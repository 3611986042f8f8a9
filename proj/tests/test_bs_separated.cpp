// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ambsim/bs_separated.hpp"
#include "ambsim/channel.hpp"
#include "ambsim/errors.hpp"
#include "support.hpp"

namespace ambsim {
namespace {

constexpr double kPi = std::numbers::pi;

Scenario separated_scenario(ConstellationKind kind, double alpha, double d12, double theta) {
  Scenario sc;
  sc.geometry.d12 = d12;
  sc.geometry.theta = theta;
  sc.constellation = standard_constellation(kind, alpha);
  sc.sigma_v4_sq = 1e-2;
  return sc;
}

SeparatedRealization random_realization(std::size_t m, RandomStream& rng) {
  SeparatedRealization r;
  r.psi12 = draw_complex_normal(m, 2.0, rng);
  r.psi24 = draw_complex_normal(m, 0.5, rng);
  r.psi14 = draw_complex_normal(m, 1.0, rng);
  r.s = draw_complex_normal(m, 1.0, rng);
  return r;
}

LambdaSpectrum spectrum(std::size_t q, std::size_t m, std::vector<double> v) {
  return {q, m, std::move(v)};
}

TEST(LambdaSpectrum, SleepModeIndependentOfSymbol) {
  RandomStream rng(60, 0);
  const SeparatedRealization r = random_realization(16, rng);
  const LambdaSpectrum l =
      lambda_spectrum(r, standard_constellation(ConstellationKind::ASK4, 0.0), 1.0, 0.1);
  for (std::size_t m = 0; m < 16; ++m) {
    for (std::size_t q = 0; q < 4; ++q) EXPECT_NEAR(l(q, m), std::norm(r.psi14[m]) + 0.1, 1e-15);
  }
}

TEST(LambdaSpectrum, NoInterferenceBpskSymmetric) {
  RandomStream rng(61, 0);
  SeparatedRealization r = random_realization(16, rng);
  r.psi14.assign(16, 0.0);
  const LambdaSpectrum l =
      lambda_spectrum(r, standard_constellation(ConstellationKind::BPSK, 0.7), 1.3, 0.1);
  for (std::size_t m = 0; m < 16; ++m) EXPECT_NEAR(l(0, m), l(1, m), 1e-14 * l(0, m));
}

TEST(LambdaSpectrum, ExpandedFormOnRandomDraws) {
  RandomStream rng(62, 0);
  for (int t = 0; t < 200; ++t) {
    const SeparatedRealization r = random_realization(8, rng);
    const Constellation c =
        standard_constellation(static_cast<ConstellationKind>(rng.uniform_index(3)), rng.uniform());
    const double ss = 0.5 + rng.uniform();
    const double v4 = 1e-3 + rng.uniform();
    const LambdaSpectrum l = lambda_spectrum(r, c, ss, v4);
    for (std::size_t q = 0; q < c.size(); ++q) {
      for (std::size_t m = 0; m < 8; ++m) {
        const cplx g = r.psi12[m] * r.psi24[m];
        const cplx h = r.psi14[m];
        const cplx b = c.points()[q];
        const double a = c.alpha();
        const double expanded = a * a * ss * std::norm(g) * std::norm(b) +
                                2.0 * a * ss * std::real(g * std::conj(h) * b) + ss * std::norm(h) + v4;
        EXPECT_NEAR(l(q, m), expanded, 1e-10 * (1.0 + expanded));
        EXPECT_GE(l(q, m), v4);
      }
    }
  }
}

TEST(CutoffSeparated, ScalarCases) {
  EXPECT_NEAR(cutoff_rate_realization_sep(spectrum(4, 3, std::vector<double>(12, 2.5))), 0.0, 1e-14);
  EXPECT_NEAR(cutoff_rate_realization_sep(spectrum(2, 1, {4.0, 1.0})), 1.0 - std::log2(1.8), 1e-14);
  EXPECT_NEAR(cutoff_rate_realization_sep(spectrum(2, 1, {4.0, 1.0})), 0.15200, 1e-5);
  // Distinguishable symbols on many subcarriers approach log2 Q.
  std::vector<double> v(2 * 64);
  for (std::size_t m = 0; m < 64; ++m) {
    v[m] = 1e6;
    v[64 + m] = 1.0;
  }
  EXPECT_NEAR(cutoff_rate_realization_sep(spectrum(2, 64, v)), 1.0, 1e-12);
}

TEST(BpskProduct, TrivialCases) {
  const std::vector<double> common{2.0, 3.0, 4.0};
  EXPECT_EQ(bpsk_product_factor(common, std::vector<double>{0.0, 0.0, 0.0}), 1.0);
  EXPECT_EQ(bpsk_cutoff_from_product(1.0), 0.0);
  EXPECT_EQ(bpsk_product_factor(common, std::vector<double>{0.5, -3.0, 1.0}), 0.0);
  EXPECT_EQ(bpsk_cutoff_from_product(0.0), 1.0);
  EXPECT_THROW(bpsk_product_factor(common, std::vector<double>{0.0, 3.5, 0.0}), ConsistencyError);
  EXPECT_THROW(bpsk_product_factor(common, std::vector<double>{0.0}), std::invalid_argument);
}

TEST(BpskProduct, MatchesBinaryCutoff) {
  RandomStream rng(63, 0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + rng.uniform_index(32);
    const SeparatedRealization r = random_realization(m, rng);
    const double alpha = rng.uniform();
    const double v4 = 1e-4 + rng.uniform();
    const Constellation c = standard_constellation(ConstellationKind::BPSK, alpha);
    std::vector<double> common;
    std::vector<double> cross;
    bpsk_lambda_parts(r, alpha, 1.0, v4, common, cross);
    const double closed = bpsk_cutoff_from_product(bpsk_product_factor(common, cross));
    EXPECT_NEAR(closed, cutoff_rate_realization_sep(lambda_spectrum(r, c, 1.0, v4)), 1e-10);
  }
}

TEST(JFunction, PeakAndLimits) {
  EXPECT_NEAR(j_of_d(std::sqrt(2.0)), 1.0 / (1.0 + 2.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(j_of_d(std::sqrt(2.0)), 0.261204, 1e-6);
  EXPECT_LT(j_of_d(1e-9), 1e-9);
  EXPECT_LT(j_of_d(1e9), 1e-8);
  EXPECT_EQ(j_of_d(0.0), 0.0);
  EXPECT_EQ(j_of_d(INFINITY), 0.0);
  for (double d = 0.05; d < 20.0; d *= 1.1) EXPECT_LE(j_of_d(d), j_of_d(std::sqrt(2.0)));
  EXPECT_THROW(d_ratio(0.2, 1.0, 0.3, 3.0, 0.0), std::invalid_argument);
}

TEST(JFunction, GoldenSectionFindsRootTwo) {
  for (double alpha : {0.1, 0.3}) {
    auto j = [alpha](double d12) { return j_function(d12, 1.0, kPi / 3.0, 3.0, alpha); };
    const double best = testing::golden_section_max(j, 0.01, 0.99, 1e-12);
    EXPECT_NEAR(d_ratio(best, 1.0, kPi / 3.0, 3.0, alpha), std::sqrt(2.0), 1e-6) << alpha;
    EXPECT_NEAR(j(best), 1.0 / (1.0 + 2.0 * std::sqrt(2.0)), 1e-10);
  }
}

TEST(JFunction, ZeroNoiseMomentRatio) {
  const std::size_t m = 16;
  for (double alpha : {0.1, 0.5}) {
    for (double d12 : {0.2, 0.5}) {
      Scenario sc = separated_scenario(ConstellationKind::BPSK, alpha, d12, kPi / 3.0);
      sc.sampling = PsiSampling::Marginal;
      const MultiEstimate e = run_estimates({100000, 64}, 2, [&](RandomStream& rng, std::span<double> out) {
        const SeparatedRealization r = draw_separated_realization(sc, rng);
        std::vector<double> common;
        std::vector<double> cross;
        bpsk_lambda_parts(r, alpha, 1.0, 0.0, common, cross);
        out[0] = out[1] = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          out[0] += cross[k] * cross[k] / double(m);
          out[1] += common[k] * common[k] / double(m);
        }
      });
      const double a = e.component(0).mean;
      const double b = e.component(1).mean;
      const double ratio = a / b;
      const double var = e.covariance(0, 0) / (b * b) + a * a * e.covariance(1, 1) / (b * b * b * b) -
                         2.0 * a * e.covariance(0, 1) / (b * b * b);
      const double j = j_function(d12, 1.0, kPi / 3.0, 3.0, alpha);
      EXPECT_NEAR(ratio, j, 3.0 * std::sqrt(var)) << alpha << " " << d12;
    }
  }
}

TEST(BpskClosedForm, ScalarCases) {
  EXPECT_EQ(bpsk_lower_closed_form(0.0, 32), 0.0);
  EXPECT_NEAR(bpsk_lower_closed_form(1.0, 32), 1.0 / 32.0, 1e-15);
  const double j = 1.0 / (1.0 + 2.0 * std::sqrt(2.0));
  EXPECT_NEAR(bpsk_lower_closed_form(j, 32), (1.0 - std::log2(1.0 + std::pow(1.0 - j, 16.0))) / 32.0,
              1e-15);
  EXPECT_NEAR(bpsk_lower_closed_form(j, 32), 0.030896, 1e-6);
  const Scenario sc = separated_scenario(ConstellationKind::BPSK, 0.1, 0.3, kPi / 3.0);
  EXPECT_NEAR(bpsk_lower_closed_form(sc),
              bpsk_lower_closed_form(j_function(0.3, 1.0, kPi / 3.0, 3.0, 0.1), 32), 1e-15);
  EXPECT_THROW(bpsk_lower_closed_form(separated_scenario(ConstellationKind::QPSK, 0.1, 0.3, 1.0)),
               std::invalid_argument);
}

TEST(C4Bounds, SleepModeAndOrdering) {
  Scenario off = separated_scenario(ConstellationKind::QPSK, 0.0, 0.3, kPi / 3.0);
  EXPECT_NEAR(c4_lower(off, {500, 65}).mean, 0.0, 1e-12);
  EXPECT_EQ(c4_upper(off, {500, 65}).mean, 0.0);
  for (auto kind : {ConstellationKind::BPSK, ConstellationKind::QPSK, ConstellationKind::ASK4}) {
    for (double d12 : {0.1, 0.5, 0.9}) {
      const Scenario sc = separated_scenario(kind, 0.1, d12, kPi / 3.0);
      const CapacityEstimate lo = c4_lower(sc, {2000, 66});
      const CapacityEstimate up = c4_upper(sc, {2000, 66});
      EXPECT_LE(lo.mean, up.mean + 3.0 * std::hypot(lo.std_error, up.std_error));
      EXPECT_GE(lo.mean, 0.0);
      EXPECT_LE(lo.mean, std::log2(double(sc.constellation.size())) / 32.0);
    }
  }
}

TEST(C4Lower, GrowsWithBackscatterStrength) {
  // Distinct moduli for every pair, so a dominant backscatter path separates
  // all symbols through |beta|.
  const Constellation unipolar = Constellation::equiprobable({0.25, 0.5, 0.75, 1.0}, 1.0);
  double prev = -1.0;
  for (double alpha : {0.01, 0.03, 0.1, 0.3, 1.0}) {
    Scenario sc = separated_scenario(ConstellationKind::QPSK, alpha, 0.2, kPi / 3.0);
    sc.constellation = unipolar.with_alpha(alpha);
    const CapacityEstimate e = c4_lower(sc, {2000, 67});
    EXPECT_GT(e.mean, prev) << alpha;
    prev = e.mean;
  }
}

TEST(C4Lower, ConstantModulusFollowsJ) {
  // For QPSK only the cross term separates symbols; the bound rises and then
  // falls with alpha, like J(D).
  std::vector<double> v;
  for (double alpha : {0.01, 0.1, 1.0}) {
    const Scenario sc = separated_scenario(ConstellationKind::QPSK, alpha, 0.2, kPi / 3.0);
    v.push_back(c4_lower(sc, {2000, 67}).mean);
  }
  EXPECT_GT(v[1], v[0]);
  EXPECT_GT(v[1], v[2]);
}

TEST(C4Lower, SaturatesAtVanishingNoise) {
  Scenario sc = separated_scenario(ConstellationKind::QPSK, 0.1, 0.2, kPi / 3.0);
  sc.sigma_v4_sq = 1e-4;
  const CapacityEstimate a = c4_lower(sc, {4000, 68});
  sc.sigma_v4_sq = 1e-6;
  const CapacityEstimate b = c4_lower(sc, {4000, 68});
  EXPECT_LT(std::abs(a.mean - b.mean), 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST(C4Upper, LargeMAndSampling) {
  Scenario sc = separated_scenario(ConstellationKind::QPSK, 0.1, 0.3, kPi / 3.0);
  sc.frame.m = 512;
  const double limit = c4_upper_large_m(sc);
  EXPECT_NEAR(c4_upper(sc, {1000, 69}).mean, limit, 0.05 * limit);
  // Only the mean of Theta124 is fixed by the marginals.
  sc.frame.m = 32;
  const double expected = 32.0 * sc.link_variance(LinkId::k12) * sc.link_variance(LinkId::k24);
  for (PsiSampling mode : {PsiSampling::TapLevel, PsiSampling::Marginal}) {
    sc.sampling = mode;
    const CapacityEstimate e = run_estimate(
        {100000, 70}, [&](RandomStream& rng) { return draw_separated_realization(sc, rng).theta124; });
    EXPECT_NEAR(e.mean, expected, 3.0 * e.std_error) << to_string(mode);
  }
}

TEST(C4UpperLargeM, DistanceShapes) {
  auto value = [](double d12, double theta) {
    return c4_upper_large_m(separated_scenario(ConstellationKind::QPSK, 0.1, d12, theta));
  };
  std::vector<double> grid;
  for (int i = 1; i <= 1500; ++i) grid.push_back(i * 1e-3);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    EXPECT_LT(value(grid[i], kPi / 3.0), value(grid[i - 1], kPi / 3.0)) << grid[i];
  }
  std::vector<double> local_max;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double v = value(grid[i], kPi / 18.0);
    if (v > value(grid[i - 1], kPi / 18.0) && v > value(grid[i + 1], kPi / 18.0)) local_max.push_back(grid[i]);
  }
  ASSERT_EQ(local_max.size(), 1u);
  EXPECT_NEAR(local_max[0], 0.9520, 1e-3);
  EXPECT_GT(value(1e-4, kPi / 18.0), value(1e-3, kPi / 18.0));
  EXPECT_GT(value(1e-4, kPi / 18.0), value(local_max[0], kPi / 18.0));
}

}  // namespace
}  // namespace ambsim
