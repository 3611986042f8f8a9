// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ambsim/errors.hpp"
#include "ambsim/frontend.hpp"
#include "ambsim/mc_engine.hpp"

namespace ambsim {
namespace {

TEST(Reflection, FromSymbol) {
  const Constellation sleep = standard_constellation(ConstellationKind::QPSK, 0.0);
  for (std::size_t q = 0; q < sleep.size(); ++q) {
    EXPECT_EQ(reflection_from_symbol(sleep, q).value, cplx(0.0, 0.0));
  }
  const Constellation bpsk = standard_constellation(ConstellationKind::BPSK, 1.0);
  EXPECT_EQ(reflection_from_symbol(bpsk, 0).value, cplx(1.0, 0.0));

  const cplx beta = std::polar(1.0, std::numbers::pi / 4.0);
  const Constellation one = Constellation::equiprobable({beta, -beta}, 0.5);
  EXPECT_LT(std::abs(reflection_from_symbol(one, 0).value - 0.5 * beta), 1e-15);
  EXPECT_THROW(reflection_from_symbol(one, 2), std::out_of_range);
}

TEST(Reflection, ChipImpedanceBoundaries) {
  const Impedance za{50.0, 0.0};
  const Impedance matched = chip_impedance(za, {cplx(0.0, 0.0)});
  EXPECT_NEAR(matched.resistance, 50.0, 1e-12);
  EXPECT_NEAR(matched.reactance, 0.0, 1e-12);
  const Impedance shorted = chip_impedance(za, {cplx(1.0, 0.0)});
  EXPECT_NEAR(shorted.resistance, 0.0, 1e-12);
  EXPECT_NEAR(shorted.reactance, 0.0, 1e-12);
  EXPECT_THROW(chip_impedance(za, {cplx(-1.0, 0.0)}), DegenerateCircuit);
}

TEST(Reflection, FromImpedance) {
  const Impedance za{30.0, 12.0};
  const Impedance conj{30.0, -12.0};
  EXPECT_LT(std::abs(reflection_from_impedance(za, conj).value), 1e-15);
  EXPECT_LT(std::abs(reflection_from_impedance({50.0, 0.0}, {0.0, 0.0}).value - 1.0), 1e-15);
  EXPECT_LT(std::abs(reflection_from_impedance({50.0, 0.0}, {100.0, 0.0}).value + 1.0 / 3.0), 1e-15);
  EXPECT_THROW(reflection_from_impedance({0.0, 5.0}, {0.0, -5.0}), DegenerateCircuit);
}

TEST(Reflection, RoundTripRandomPassivePairs) {
  RandomStream rng(3, 0);
  for (int i = 0; i < 1000; ++i) {
    const Impedance za{1.0 + 99.0 * rng.uniform(), 200.0 * (rng.uniform() - 0.5)};
    const cplx g = std::polar(0.99 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    const Impedance zc = chip_impedance(za, {g});
    const cplx back = reflection_from_impedance(za, zc).value;
    EXPECT_LT(std::abs(back - g), 1e-12);
  }
}

TEST(Reflection, HarvestedFraction) {
  EXPECT_EQ(harvested_fraction({cplx(0.0, 0.0)}), 1.0);
  EXPECT_NEAR(harvested_fraction({std::polar(1.0, 0.3)}), 0.0, 1e-15);
  EXPECT_EQ(harvested_fraction({cplx(0.5, 0.0)}), 0.75);
  RandomStream rng(4, 0);
  for (int i = 0; i < 100; ++i) {
    const ReflectionCoefficient g{cplx(rng.uniform() - 0.5, rng.uniform() - 0.5)};
    EXPECT_EQ(harvested_fraction(g) + std::norm(g.value), 1.0);
  }
}

TEST(StandardConstellation, Bpsk) {
  const Constellation c = standard_constellation(ConstellationKind::BPSK, 0.3);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_NEAR(c.min_distance(), 2.0, 1e-15);
  EXPECT_NEAR(c.energy(), 1.0, 1e-15);
  EXPECT_TRUE(c.constant_modulus());
  EXPECT_DOUBLE_EQ(c.alpha(), 0.3);
}

TEST(StandardConstellation, Qpsk) {
  const Constellation c = standard_constellation(ConstellationKind::QPSK, 0.3);
  EXPECT_EQ(c.size(), 4u);
  EXPECT_NEAR(c.min_distance(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(c.energy(), 1.0, 1e-15);
  EXPECT_LT(std::abs(c.points()[0] - std::polar(1.0, std::numbers::pi / 4.0)), 1e-15);
}

TEST(StandardConstellation, Ask4Normalizations) {
  const Constellation maxamp = standard_constellation(ConstellationKind::ASK4, 0.3);
  EXPECT_NEAR(maxamp.energy(), 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(maxamp.min_distance(), 2.0 / 3.0, 1e-15);
  for (const cplx& b : maxamp.points()) EXPECT_LE(std::abs(b), 1.0 + 1e-15);
  EXPECT_FALSE(maxamp.constant_modulus());

  const Constellation unit =
      standard_constellation(ConstellationKind::ASK4, 0.3, AskNormalization::UnitEnergy);
  EXPECT_NEAR(unit.energy(), 1.0, 1e-12);
  double peak = 0.0;
  for (const cplx& b : unit.points()) peak = std::max(peak, std::abs(b));
  EXPECT_NEAR(peak, 3.0 / std::sqrt(5.0), 1e-12);
}

TEST(StandardConstellation, Invariants) {
  for (auto kind : {ConstellationKind::BPSK, ConstellationKind::QPSK, ConstellationKind::ASK4}) {
    const Constellation c = standard_constellation(kind, 0.5);
    double sum = 0.0;
    for (double p : c.probabilities()) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-15);
    EXPECT_TRUE(c.equiprobable_pmf());
    EXPECT_GT(c.min_distance(), 0.0);
    EXPECT_LE(c.energy(), 1.0 + 1e-15);
  }
}

TEST(Constellation, RejectsInvalidSets) {
  EXPECT_THROW(Constellation::equiprobable({}, 0.5), std::invalid_argument);
  EXPECT_THROW(Constellation::equiprobable({1.0, 1.0}, 0.5), std::invalid_argument);
  EXPECT_THROW(Constellation::equiprobable({2.0, -2.0}, 0.5), std::invalid_argument);
  EXPECT_THROW(Constellation::equiprobable({1.0, -1.0}, 1.5), std::invalid_argument);
  EXPECT_THROW(Constellation({1.0, -1.0}, {0.7, 0.7}, 0.5), std::invalid_argument);
}

TEST(Constellation, ParseNames) {
  EXPECT_EQ(parse_constellation_kind("QPSK"), ConstellationKind::QPSK);
  EXPECT_EQ(parse_constellation_kind("ask4"), ConstellationKind::ASK4);
  EXPECT_EQ(to_string(ConstellationKind::BPSK), "BPSK");
  EXPECT_THROW(parse_constellation_kind("8PSK"), std::invalid_argument);
  EXPECT_EQ(parse_ask_normalization("unit_energy"), AskNormalization::UnitEnergy);
}

}  // namespace
}  // namespace ambsim
