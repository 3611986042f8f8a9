// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ambsim {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Welford/Chan accumulator over k outputs.
struct BlockStats {
  std::uint64_t n = 0;
  std::vector<double> mean;
  std::vector<double> comoment;  // k x k, sum of (x_i - mean_i)(x_j - mean_j)
  std::vector<double> delta;

  explicit BlockStats(std::size_t k = 0) : mean(k, 0.0), comoment(k * k, 0.0), delta(k, 0.0) {}

  void add(std::span<const double> x) {
    const std::size_t k = mean.size();
    ++n;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < k; ++i) {
      delta[i] = x[i] - mean[i];
      mean[i] += delta[i] * inv_n;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const double after_i = x[i] - mean[i];
      for (std::size_t j = 0; j < k; ++j) {
        comoment[i * k + j] += delta[j] * after_i;
      }
    }
  }

  void merge(const BlockStats& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const std::size_t k = mean.size();
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(other.n);
    const double nt = na + nb;
    for (std::size_t i = 0; i < k; ++i) delta[i] = other.mean[i] - mean[i];
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        comoment[i * k + j] += other.comoment[i * k + j] + delta[i] * delta[j] * na * nb / nt;
      }
    }
    for (std::size_t i = 0; i < k; ++i) mean[i] += delta[i] * nb / nt;
    n += other.n;
  }
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t key = splitmix64(splitmix64(master_seed) ^ rotl(splitmix64(index), 17));
  for (auto& word : s_) {
    key += kGolden;
    word = splitmix64(key);
  }
}

RandomStream::result_type RandomStream::operator()() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

cplx RandomStream::complex_normal(double variance) {
  const double sd = std::sqrt(0.5 * variance);
  const double re = normal();
  const double im = normal();
  return {sd * re, sd * im};
}

std::size_t RandomStream::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
}

CapacityEstimate MultiEstimate::component(std::size_t i) const {
  return {mean.at(i), std::sqrt(std::max(0.0, covariance(i, i))), trials};
}

MultiEstimate run_estimates(const TrialPlan& plan, std::size_t outputs,
                            const MultiTrialFn& trial_fn) {
  if (plan.trials < 1) throw std::invalid_argument("run_estimates: trials must be >= 1");
  if (outputs < 1) throw std::invalid_argument("run_estimates: need at least one output");
  const std::uint64_t batch = std::max<std::uint64_t>(1, plan.batch_size);
  const std::uint64_t n_blocks = (plan.trials + batch - 1) / batch;

  std::vector<BlockStats> blocks(n_blocks, BlockStats(outputs));
  std::atomic<std::uint64_t> next{0};

  auto worker = [&]() {
    std::vector<double> out(outputs);
    for (std::uint64_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
      const std::uint64_t first = b * batch;
      const std::uint64_t last = std::min(plan.trials, first + batch);
      BlockStats& stats = blocks[b];
      for (std::uint64_t i = first; i < last; ++i) {
        RandomStream stream(plan.master_seed, i);
        std::fill(out.begin(), out.end(), 0.0);
        trial_fn(stream, out);
        stats.add(out);
      }
    }
  };

  unsigned workers = plan.workers != 0 ? plan.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, n_blocks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  BlockStats total(outputs);
  for (const auto& b : blocks) total.merge(b);

  MultiEstimate result;
  result.trials = total.n;
  result.mean = total.mean;
  result.mean_covariance.assign(outputs * outputs, 0.0);
  if (total.n > 1) {
    const double denom = static_cast<double>(total.n - 1) * static_cast<double>(total.n);
    for (std::size_t i = 0; i < outputs * outputs; ++i) {
      result.mean_covariance[i] = total.comoment[i] / denom;
    }
  }
  return result;
}

CapacityEstimate run_estimate(const TrialPlan& plan, const TrialFn& trial_fn) {
  const MultiEstimate m = run_estimates(
      plan, 1, [&trial_fn](RandomStream& s, std::span<double> out) { out[0] = trial_fn(s); });
  return m.component(0);
}

}  // namespace ambsim
