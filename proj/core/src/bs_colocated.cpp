// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/bs_colocated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ambsim/channel.hpp"

namespace ambsim {
namespace {

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double min_distance_form(const Constellation& c, double theta121, double snr_b1) {
  const double q = static_cast<double>(c.size());
  const double d = c.min_distance();
  const double x = theta121 * snr_b1 * d * d / (4.0 * c.energy());
  return std::log2(q) - std::log2(1.0 + (q - 1.0) * std::exp(-x));
}

}  // namespace

ColocatedRealization make_colocated_realization(std::span<const cplx> psi12,
                                                std::span<const cplx> psi21,
                                                std::span<const cplx> s, double snr_b1) {
  if (psi12.size() != s.size() || psi21.size() != s.size()) {
    throw std::invalid_argument("make_colocated_realization: length mismatch");
  }
  ColocatedRealization r;
  r.psi.resize(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) {
    r.psi[m] = psi12[m] * psi21[m] * s[m];
    r.theta121 += std::norm(r.psi[m]);
  }
  r.snr_b1 = snr_b1;
  return r;
}

ColocatedRealization draw_colocated_realization(const Scenario& sc, RandomStream& rng) {
  const std::size_t m = sc.frame.m;
  const CVector s = draw_complex_normal(m, sc.sigma_s_sq, rng);
  CVector psi12, psi21;
  if (sc.sampling == PsiSampling::Marginal) {
    psi12 = draw_complex_normal(m, sc.link_variance(LinkId::k12), rng);
    psi21 = draw_complex_normal(m, sc.link_variance(LinkId::k21), rng);
  } else {
    const RootsOfUnity roots(m);
    const CVector c12 = draw_taps(sc.link_spec(LinkId::k12), rng);
    const CVector c21 = draw_taps(sc.link_spec(LinkId::k21), rng);
    psi12 = freq_response(c12, sc.link(LinkId::k12).time_offset, roots);
    psi21 = freq_response(c21, sc.link(LinkId::k21).time_offset, roots);
  }
  return make_colocated_realization(psi12, psi21, s, sc.snr_b1());
}

CapacityEstimate c1_upper(const Scenario& sc, const TrialPlan& plan) {
  sc.validate();
  const double inv_m = 1.0 / static_cast<double>(sc.frame.m);
  return run_estimate(plan, [&](RandomStream& rng) {
    const ColocatedRealization r = draw_colocated_realization(sc, rng);
    return inv_m * std::log2(1.0 + r.snr_b1 * r.theta121);
  });
}

double c1_upper_large_m(const Scenario& sc) {
  const double m = static_cast<double>(sc.frame.m);
  const double s12 = path_loss_variance(sc.geometry.d12, sc.geometry.eta);
  return std::log2(1.0 + sc.snr_b1() * m * sc.sigma_s_sq * s12 * s12) / m;
}

bool distance_invariant(const Constellation& c) {
  const auto& pts = c.points();
  auto profile = [&pts](std::size_t i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < pts.size(); ++j) d.push_back(std::norm(pts[i] - pts[j]));
    std::sort(d.begin(), d.end());
    return d;
  };
  const std::vector<double> ref = profile(0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const std::vector<double> d = profile(i);
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (std::abs(d[k] - ref[k]) > 1e-12) return false;
    }
  }
  return true;
}

double cutoff_rate_realization(const Constellation& c, double theta121, double snr_b1) {
  const auto& pts = c.points();
  const auto& p = c.probabilities();
  const double scale = theta121 * snr_b1 / (4.0 * c.energy());
  double sum = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = 0; b < pts.size(); ++b) {
      sum += p[a] * p[b] * std::exp(-scale * std::norm(pts[a] - pts[b]));
    }
  }
  return std::max(0.0, -std::log2(sum));
}

double cutoff_rate_reference_point(const Constellation& c, double theta121, double snr_b1) {
  const auto& pts = c.points();
  const double scale = theta121 * snr_b1 / (4.0 * c.energy());
  double sum = 1.0;
  for (std::size_t q = 1; q < pts.size(); ++q) {
    sum += std::exp(-scale * std::norm(pts[0] - pts[q]));
  }
  return std::max(0.0, std::log2(static_cast<double>(pts.size())) - std::log2(sum));
}

CapacityEstimate c1_lower_cutoff(const Scenario& sc, const TrialPlan& plan) {
  sc.validate();
  const Constellation& c = sc.constellation;
  const bool reference = c.equiprobable_pmf() && distance_invariant(c);
  const double inv_m = 1.0 / static_cast<double>(sc.frame.m);
  return run_estimate(plan, [&](RandomStream& rng) {
    const ColocatedRealization r = draw_colocated_realization(sc, rng);
    const double rate = reference ? cutoff_rate_reference_point(c, r.theta121, r.snr_b1)
                                  : cutoff_rate_realization(c, r.theta121, r.snr_b1);
    return inv_m * rate;
  });
}

CapacityEstimate c1_lower_min_distance(const Scenario& sc, const TrialPlan& plan) {
  sc.validate();
  const double inv_m = 1.0 / static_cast<double>(sc.frame.m);
  return run_estimate(plan, [&](RandomStream& rng) {
    const ColocatedRealization r = draw_colocated_realization(sc, rng);
    return inv_m * min_distance_form(sc.constellation, r.theta121, r.snr_b1);
  });
}

LargeMLowerBound c1_lower_large_m(const Scenario& sc) {
  const double m = static_cast<double>(sc.frame.m);
  const double s12 = path_loss_variance(sc.geometry.d12, sc.geometry.eta);
  const double theta = m * sc.sigma_s_sq * s12 * s12;
  return {cutoff_rate_reference_point(sc.constellation, theta, sc.snr_b1()) / m,
          min_distance_form(sc.constellation, theta, sc.snr_b1()) / m};
}

double c1_lower_large_m_low_snr(const Scenario& sc) {
  const Constellation& c = sc.constellation;
  const double q = static_cast<double>(c.size());
  const double d = c.min_distance();
  const double s12 = path_loss_variance(sc.geometry.d12, sc.geometry.eta);
  return (1.0 - 1.0 / q) * sc.sigma_s_sq * sc.snr_b1() * d * d * s12 * s12 /
         (4.0 * c.energy()) * kLog2E;
}

double mixture_mutual_information(const Constellation& c, const ColocatedRealization& r,
                                  std::size_t mc_samples, RandomStream& rng) {
  if (mc_samples == 0) throw std::invalid_argument("mixture_mutual_information: no samples");
  const auto& pts = c.points();
  const auto& p = c.probabilities();
  const std::size_t q_count = pts.size();
  const double rho = r.snr_b1 * r.theta121 / c.energy();
  const double amp = std::sqrt(rho);

  std::vector<double> log_p(q_count);
  for (std::size_t q = 0; q < q_count; ++q) log_p[q] = std::log(p[q]);
  std::vector<double> terms(q_count);

  double acc = 0.0;
  for (std::size_t i = 0; i < mc_samples; ++i) {
    const cplx w = rng.complex_normal(1.0);
    const double w2 = std::norm(w);
    for (std::size_t q = 0; q < q_count; ++q) {
      if (p[q] == 0.0) continue;
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < q_count; ++k) {
        terms[k] = log_p[k] + w2 - std::norm(amp * (pts[q] - pts[k]) + w);
        top = std::max(top, terms[k]);
      }
      double s = 0.0;
      for (std::size_t k = 0; k < q_count; ++k) s += std::exp(terms[k] - top);
      acc += p[q] * -(top + std::log(s)) * kLog2E;
    }
  }
  const double mi = acc / static_cast<double>(mc_samples);
  return std::clamp(mi, 0.0, entropy_bits(p));
}

}  // namespace ambsim
