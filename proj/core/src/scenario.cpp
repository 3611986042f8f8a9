// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/scenario.hpp"

#include <sstream>
#include <stdexcept>

#include "ambsim/errors.hpp"

namespace ambsim {
namespace {

struct Check {
  std::string name;
  std::string lhs;
  std::string rhs;
  long lhs_value;
  long rhs_value;
};

std::string format(const Check& c) {
  std::ostringstream os;
  os << c.name << ": " << c.lhs << " >= " << c.rhs << " violated: " << c.lhs_value << " < "
     << c.rhs_value;
  return os.str();
}

}  // namespace

void FrameConfig::validate() const {
  if (!(cp > 0 && cp < m)) {
    std::ostringstream os;
    os << "frame condition: 0 < L_cp < M violated: L_cp = " << cp << ", M = " << m;
    throw ConditionViolation(os.str());
  }
}

std::string_view to_string(LinkId id) {
  switch (id) {
    case LinkId::k12: return "12";
    case LinkId::k13: return "13";
    case LinkId::k23: return "23";
    case LinkId::k14: return "14";
    case LinkId::k24: return "24";
    case LinkId::k21: return "21";
    case LinkId::k11: return "11";
  }
  return "?";
}

PsiSampling parse_psi_sampling(std::string_view name) {
  if (name == "tap") return PsiSampling::TapLevel;
  if (name == "marginal") return PsiSampling::Marginal;
  throw std::invalid_argument("unknown psi sampling '" + std::string(name) + "'");
}

std::string_view to_string(PsiSampling s) {
  return s == PsiSampling::TapLevel ? "tap" : "marginal";
}

double Scenario::link_variance(LinkId id) const {
  const NetworkGeometry& g = geometry;
  switch (id) {
    case LinkId::k12:
    case LinkId::k21: return path_loss_variance(g.d12, g.eta);
    case LinkId::k13: return path_loss_variance(g.d13, g.eta);
    case LinkId::k23: return path_loss_variance(g.d23(), g.eta);
    case LinkId::k14: return path_loss_variance(g.d14, g.eta);
    case LinkId::k24: return path_loss_variance(g.d24(), g.eta);
    case LinkId::k11: return self_interference_variance;
  }
  throw std::invalid_argument("link_variance: unknown link");
}

LinkSpec Scenario::link_spec(LinkId id) const {
  const LinkTiming& t = link(id);
  return {t.order, t.time_offset, link_variance(id)};
}

std::optional<std::string> Scenario::first_violation() const {
  try {
    frame.validate();
  } catch (const ConditionViolation& e) {
    return std::string(e.what());
  }
  const long p = static_cast<long>(frame.p());
  const long cp = static_cast<long>(frame.cp);
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    const auto id = static_cast<LinkId>(i);
    const LinkTiming& t = links[i];
    if (t.order < 0 || t.time_offset < 0) {
      return "link " + std::string(to_string(id)) + ": order and time offset must be >= 0";
    }
    const long span = t.order + t.time_offset;
    if (span > p - 1) {
      const std::string s(to_string(id));
      return format({"IBI condition", "P-1", "L" + s + "+theta" + s, p - 1, span});
    }
  }
  auto span = [this](LinkId id) { return static_cast<long>(link(id).order + link(id).time_offset); };
  const long s12 = span(LinkId::k12);

  const std::vector<Check> checks{
      {"CP condition", "L_cp", "L13+theta13", cp, span(LinkId::k13)},
      {"CP condition", "L_cp", "L12+L23+theta12+theta23", cp, s12 + span(LinkId::k23)},
      {"composite condition", "P-1", "L12+L23+theta12+theta23", p - 1, s12 + span(LinkId::k23)},
      {"BRx condition", "L_cp", "L14+theta14", cp, span(LinkId::k14)},
      {"BRx condition", "L_cp", "L24+theta24", cp, span(LinkId::k24)},
      {"BRx condition", "L_cp", "L12+L24+theta12+theta24", cp, s12 + span(LinkId::k24)},
      {"composite condition", "P-1", "L12+L24+theta12+theta24", p - 1, s12 + span(LinkId::k24)},
      {"co-located condition", "L_cp", "L11+theta11", cp, span(LinkId::k11)},
      {"co-located condition", "L_cp", "L12+L21+theta12+theta21", cp, s12 + span(LinkId::k21)},
  };
  for (const Check& c : checks) {
    if (c.lhs_value < c.rhs_value) return format(c);
  }

  try {
    geometry.validate();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what());
  }
  if (!(sigma_s_sq > 0.0)) return std::string("power: sigma_s^2 must be positive");
  if (!(snr_l > 0.0)) return std::string("power: SNR_L must be positive");
  if (!(sigma_v1_sq > 0.0 && sigma_v4_sq > 0.0)) {
    return std::string("power: noise variances must be positive");
  }
  return std::nullopt;
}

void Scenario::validate() const {
  if (auto v = first_violation()) throw ConditionViolation(*v);
}

std::size_t draw_symbol_index(const Constellation& c, RandomStream& rng) {
  if (c.equiprobable_pmf()) return rng.uniform_index(c.size());
  const double u = rng.uniform();
  double acc = 0.0;
  const auto& p = c.probabilities();
  for (std::size_t q = 0; q + 1 < p.size(); ++q) {
    acc += p[q];
    if (u < acc) return q;
  }
  return p.size() - 1;
}

ChannelDraw draw_channel(const Scenario& sc, RandomStream& rng) {
  ChannelDraw d;
  d.c13 = draw_taps(sc.link_spec(LinkId::k13), rng);
  d.c12 = draw_taps(sc.link_spec(LinkId::k12), rng);
  d.c23 = draw_taps(sc.link_spec(LinkId::k23), rng);
  d.c14 = draw_taps(sc.link_spec(LinkId::k14), rng);
  d.c24 = draw_taps(sc.link_spec(LinkId::k24), rng);
  d.c21 = draw_taps(sc.link_spec(LinkId::k21), rng);
  d.c11 = draw_taps(sc.link_spec(LinkId::k11), rng);
  return d;
}

CVector draw_complex_normal(std::size_t n, double variance, RandomStream& rng) {
  CVector v(n);
  for (auto& x : v) x = rng.complex_normal(variance);
  return v;
}

}  // namespace ambsim
