// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include <benchmark/benchmark.h>

#include <numbers>

#include "ambsim/bs_colocated.hpp"
#include "ambsim/bs_separated.hpp"
#include "ambsim/legacy_capacity.hpp"
#include "ambsim/oracle.hpp"

namespace {

using namespace ambsim;

void BM_Exi(benchmark::State& state) {
  double x = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exi(x));
    x = x < 1e3 ? x * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_Exi);

void BM_EiNegative(benchmark::State& state) {
  double x = -1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ei_negative(x));
    x = x > -700.0 ? x * 1.01 : -1e-3;
  }
}
BENCHMARK(BM_EiNegative);

void BM_UnitaryDft(benchmark::State& state) {
  RandomStream rng(1, 0);
  const CVector v = draw_complex_normal(static_cast<std::size_t>(state.range(0)), 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(unitary_dft(v));
}
BENCHMARK(BM_UnitaryDft)->Arg(16)->Arg(32)->Arg(64)->Arg(512);

void BM_PropagateFrame(benchmark::State& state) {
  Scenario sc;
  sc.frame.m = static_cast<std::size_t>(state.range(0));
  RandomStream rng(2, 0);
  const ChannelDraw d = draw_channel(sc, rng);
  FrameInputs in;
  in.s_curr = draw_complex_normal(sc.frame.m, 1.0, rng);
  in.s_prev = draw_complex_normal(sc.frame.m, 1.0, rng);
  in.s_prev2 = draw_complex_normal(sc.frame.m, 1.0, rng);
  in.b_curr = sc.constellation.points()[0];
  in.b_prev = sc.constellation.points()[1];
  in.nu = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(propagate_frame(d, sc, in));
}
BENCHMARK(BM_PropagateFrame)->Arg(32)->Arg(128);

// One estimator trial per iteration, so times read as cost per trial.
template <typename F>
void run_trials(benchmark::State& state, F estimator) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(estimator(TrialPlan{1, ++seed, 1024, 1}).mean);
}

Scenario bench_scenario() {
  Scenario sc;
  sc.geometry.d12 = 0.3;
  sc.geometry.phi = std::numbers::pi / 18.0;
  sc.geometry.theta = std::numbers::pi / 3.0;
  sc.sigma_v4_sq = 1e-2;
  return sc;
}

void BM_C3Semianalytic(benchmark::State& state) {
  const Scenario sc = bench_scenario();
  run_trials(state, [&](const TrialPlan& p) { return c3_semianalytic(sc, p); });
}
BENCHMARK(BM_C3Semianalytic);

void BM_C3McFull(benchmark::State& state) {
  const Scenario sc = bench_scenario();
  run_trials(state, [&](const TrialPlan& p) { return c3_mc_full(sc, p); });
}
BENCHMARK(BM_C3McFull);

void BM_C1LowerCutoff(benchmark::State& state) {
  const Scenario sc = bench_scenario();
  run_trials(state, [&](const TrialPlan& p) { return c1_lower_cutoff(sc, p); });
}
BENCHMARK(BM_C1LowerCutoff);

void BM_C4Lower(benchmark::State& state) {
  Scenario sc = bench_scenario();
  sc.constellation = standard_constellation(ConstellationKind::ASK4, 0.1);
  run_trials(state, [&](const TrialPlan& p) { return c4_lower(sc, p); });
}
BENCHMARK(BM_C4Lower);

}  // namespace

BENCHMARK_MAIN();
