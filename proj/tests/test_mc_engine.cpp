// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <set>

#include "ambsim/mc_engine.hpp"

namespace ambsim {
namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

TEST(RunEstimate, ConstantHasZeroError) {
  const CapacityEstimate e = run_estimate({1000, 7}, [](RandomStream&) { return 2.5; });
  EXPECT_EQ(e.mean, 2.5);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_EQ(e.trials, 1000u);
}

TEST(RunEstimate, Deterministic) {
  const TrialPlan plan{5000, 42};
  auto f = [](RandomStream& r) { return r.normal() + r.uniform(); };
  const CapacityEstimate a = run_estimate(plan, f);
  const CapacityEstimate b = run_estimate(plan, f);
  EXPECT_TRUE(bit_equal(a.mean, b.mean));
  EXPECT_TRUE(bit_equal(a.std_error, b.std_error));
}

TEST(RunEstimate, IndependentOfWorkersAndBatching) {
  auto f = [](RandomStream& r) { return std::exp(r.normal()); };
  const CapacityEstimate ref = run_estimate({20011, 9, 1024, 1}, f);
  for (unsigned workers : {2u, 3u, 8u}) {
    for (std::uint64_t batch : {1024u}) {
      const CapacityEstimate e = run_estimate({20011, 9, batch, workers}, f);
      EXPECT_TRUE(bit_equal(e.mean, ref.mean)) << workers;
      EXPECT_TRUE(bit_equal(e.std_error, ref.std_error)) << workers;
    }
  }
}

TEST(RunEstimate, StandardNormalClt) {
  const CapacityEstimate e = run_estimate({100000, 5}, [](RandomStream& r) { return r.normal(); });
  EXPECT_LT(std::abs(e.mean), 4.0 * e.std_error);
  EXPECT_NEAR(e.std_error * std::sqrt(1e5), 1.0, 0.05);
}

TEST(RunEstimates, ComponentsAndCovariance) {
  const MultiEstimate m = run_estimates({50000, 3}, 3, [](RandomStream& r, std::span<double> out) {
    const double x = r.normal();
    out[0] = x;
    out[1] = 2.0 * x;
    out[2] = 1.0;
  });
  EXPECT_EQ(m.outputs(), 3u);
  const CapacityEstimate a = m.component(0);
  const CapacityEstimate b = m.component(1);
  EXPECT_NEAR(b.mean, 2.0 * a.mean, 1e-12);
  EXPECT_NEAR(b.std_error, 2.0 * a.std_error, 1e-12);
  EXPECT_NEAR(m.covariance(0, 1), 2.0 * a.std_error * a.std_error, 1e-12);
  EXPECT_EQ(m.component(2).std_error, 0.0);
}

TEST(RandomStream, DistinctSubstreams) {
  std::set<std::uint64_t> first;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    RandomStream r(123, i);
    first.insert(r());
  }
  EXPECT_EQ(first.size(), 10000u);
}

TEST(RandomStream, Distributions) {
  RandomStream r(1, 2);
  double u = 0.0;
  double e = 0.0;
  double c = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.uniform();
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
    u += x;
    e += r.exponential(3.0);
    c += std::norm(r.complex_normal(2.0));
  }
  EXPECT_NEAR(u / n, 0.5, 0.005);
  EXPECT_NEAR(e / n, 3.0, 0.05);
  EXPECT_NEAR(c / n, 2.0, 0.03);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.uniform_index(7), 7u);
}

TEST(Splitmix, KnownValue) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

}  // namespace
}  // namespace ambsim
