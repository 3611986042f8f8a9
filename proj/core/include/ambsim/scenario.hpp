// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "ambsim/channel.hpp"
#include "ambsim/frontend.hpp"
#include "ambsim/mc_engine.hpp"

namespace ambsim {

/// Multicarrier frame: M subcarriers and a cyclic prefix of L_cp samples.
struct FrameConfig {
  std::size_t m = 32;
  std::size_t cp = 8;

  std::size_t p() const noexcept { return m + cp; }
  /// Throws ConditionViolation unless 0 < L_cp < M.
  void validate() const;
};

/// Links of the network; k11 is the co-located self-interference path.
enum class LinkId { k12, k13, k23, k14, k24, k21, k11 };
inline constexpr std::size_t kLinkCount = 7;

std::string_view to_string(LinkId id);

struct LinkTiming {
  int order = 3;
  int time_offset = 1;
};

/// How per-subcarrier responses are generated inside the backscatter
/// estimators. TapLevel draws taps and transforms them, keeping the
/// correlation across subcarriers; Marginal draws each Psi(m) from its
/// CN(0, sigma^2) marginal independently.
enum class PsiSampling { TapLevel, Marginal };

PsiSampling parse_psi_sampling(std::string_view name);
std::string_view to_string(PsiSampling s);

/// Physical description of one operating point.
struct Scenario {
  FrameConfig frame;
  std::array<LinkTiming, kLinkCount> links{};
  NetworkGeometry geometry;
  double sigma_s_sq = 1.0;
  /// sigma_s^2 / sigma_v3^2, linear
  double snr_l = 100.0;
  double sigma_v1_sq = 1.0;
  double sigma_v4_sq = 1.0;
  double self_interference_variance = 1.0;
  Constellation constellation = standard_constellation(ConstellationKind::QPSK, 0.1);
  PsiSampling sampling = PsiSampling::TapLevel;

  LinkTiming& link(LinkId id) { return links[static_cast<std::size_t>(id)]; }
  const LinkTiming& link(LinkId id) const { return links[static_cast<std::size_t>(id)]; }
  /// Order, offset and path-loss variance of a link.
  LinkSpec link_spec(LinkId id) const;
  double link_variance(LinkId id) const;

  double alpha() const noexcept { return constellation.alpha(); }
  double sigma_b_sq() const noexcept { return constellation.energy(); }
  double sigma_v3_sq() const { return sigma_s_sq / snr_l; }
  /// Gamma_13 = sigma_13^2 * SNR_L
  double gamma13() const { return link_variance(LinkId::k13) * snr_l; }
  /// alpha^2 sigma_b^2 / sigma_v1^2
  double snr_b1() const { return alpha() * alpha() * sigma_b_sq() / sigma_v1_sq; }
  /// alpha^2 sigma_b^2 / sigma_v4^2
  double snr_b4() const { return alpha() * alpha() * sigma_b_sq() / sigma_v4_sq; }

  /// First violated frame, link or geometry condition, if any.
  std::optional<std::string> first_violation() const;
  /// Throws ConditionViolation naming the inequality that fails.
  void validate() const;
};

/// Symbol index drawn from the constellation pmf.
std::size_t draw_symbol_index(const Constellation& c, RandomStream& rng);

/// Taps of every link, drawn in the order 13, 12, 23, 14, 24, 21, 11.
ChannelDraw draw_channel(const Scenario& sc, RandomStream& rng);

/// CN(0, variance) vector.
CVector draw_complex_normal(std::size_t n, double variance, RandomStream& rng);

}  // namespace ambsim
