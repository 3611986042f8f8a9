// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "ambsim/numerics.hpp"

namespace ambsim {

/// Counter-based random stream: xoshiro256++ seeded through SplitMix64 from
/// (master_seed, index). Distinct indices give independent substreams, so a
/// trial's draws never depend on which worker ran it.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t master_seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal() { return normal_(*this); }
  /// CN(0, variance): independent real/imag parts of variance/2 each.
  cplx complex_normal(double variance);
  double exponential(double mean) { return -mean * std::log(uniform()); }
  std::size_t uniform_index(std::size_t n);

 private:
  std::array<std::uint64_t, 4> s_{};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct TrialPlan {
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 1;
  /// Trials per accumulation block. Blocks are merged in index order, which
  /// is what makes the result independent of the worker count.
  std::uint64_t batch_size = 1024;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// Monte-Carlo mean with its standard error (sample std / sqrt(trials)).
struct CapacityEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

/// Joint estimate of several per-trial outputs with the covariance of their
/// sample means (row-major, outputs x outputs).
struct MultiEstimate {
  std::vector<double> mean;
  std::vector<double> mean_covariance;
  std::uint64_t trials = 0;

  std::size_t outputs() const noexcept { return mean.size(); }
  CapacityEstimate component(std::size_t i) const;
  double covariance(std::size_t i, std::size_t j) const {
    return mean_covariance[i * outputs() + j];
  }
};

using TrialFn = std::function<double(RandomStream&)>;
using MultiTrialFn = std::function<void(RandomStream&, std::span<double>)>;

CapacityEstimate run_estimate(const TrialPlan& plan, const TrialFn& trial_fn);

MultiEstimate run_estimates(const TrialPlan& plan, std::size_t outputs,
                            const MultiTrialFn& trial_fn);

/// SplitMix64 finalizer, exposed for seed derivation and hashing.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace ambsim
