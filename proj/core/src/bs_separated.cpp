// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/bs_separated.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ambsim/channel.hpp"
#include "ambsim/errors.hpp"

namespace ambsim {
namespace {

constexpr double kIdentityTol = 1e-10;

// log2(1 + e^x) without overflow.
double log2_one_plus_exp(double x) {
  if (x > 0.0) return (x + std::log1p(std::exp(-x))) * kLog2E;
  return std::log1p(std::exp(x)) * kLog2E;
}

}  // namespace

SeparatedRealization draw_separated_realization(const Scenario& sc, RandomStream& rng) {
  const std::size_t m = sc.frame.m;
  SeparatedRealization r;
  r.s = draw_complex_normal(m, sc.sigma_s_sq, rng);
  if (sc.sampling == PsiSampling::Marginal) {
    r.psi12 = draw_complex_normal(m, sc.link_variance(LinkId::k12), rng);
    r.psi24 = draw_complex_normal(m, sc.link_variance(LinkId::k24), rng);
    r.psi14 = draw_complex_normal(m, sc.link_variance(LinkId::k14), rng);
  } else {
    const RootsOfUnity roots(m);
    const CVector c12 = draw_taps(sc.link_spec(LinkId::k12), rng);
    const CVector c24 = draw_taps(sc.link_spec(LinkId::k24), rng);
    const CVector c14 = draw_taps(sc.link_spec(LinkId::k14), rng);
    r.psi12 = freq_response(c12, sc.link(LinkId::k12).time_offset, roots);
    r.psi24 = freq_response(c24, sc.link(LinkId::k24).time_offset, roots);
    r.psi14 = freq_response(c14, sc.link(LinkId::k14).time_offset, roots);
  }
  for (std::size_t k = 0; k < m; ++k) {
    r.theta124 += std::norm(r.s[k]) * std::norm(r.psi12[k]) * std::norm(r.psi24[k]);
  }
  r.snr_b4 = sc.snr_b4();
  return r;
}

LambdaSpectrum lambda_spectrum(const SeparatedRealization& r, const Constellation& c,
                               double sigma_s_sq, double sigma_v4_sq) {
  const double alpha = c.alpha();
  const auto& pts = c.points();
  LambdaSpectrum out;
  out.q = pts.size();
  out.m = r.psi12.size();
  out.values.resize(out.q * out.m);
  for (std::size_t mi = 0; mi < out.m; ++mi) {
    const cplx g = r.psi12[mi] * r.psi24[mi];
    const cplx h = r.psi14[mi];
    for (std::size_t qi = 0; qi < out.q; ++qi) {
      const cplx beta = pts[qi];
      const double t1 = alpha * alpha * sigma_s_sq * std::norm(g) * std::norm(beta);
      const double t2 = 2.0 * alpha * sigma_s_sq * std::real(g * std::conj(h) * beta);
      const double t3 = sigma_s_sq * std::norm(h);
      const double expanded = t1 + t2 + t3 + sigma_v4_sq;
      const double square = sigma_s_sq * std::norm(alpha * g * beta + h) + sigma_v4_sq;
      const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + sigma_v4_sq;
      if (!(square > 0.0) || std::abs(expanded - square) > kIdentityTol * scale) {
        std::ostringstream os;
        os << "lambda_spectrum: completed-square identity failed at q=" << qi << ", m=" << mi
           << " (expanded " << expanded << ", square " << square << ")";
        throw ConsistencyError(os.str());
      }
      out.values[qi * out.m + mi] = square;
    }
  }
  return out;
}

double cutoff_rate_realization_sep(const LambdaSpectrum& lambda) {
  const std::size_t q_count = lambda.q;
  if (q_count < 2) return 0.0;
  std::vector<double> logs;
  logs.reserve(q_count * (q_count - 1));
  for (std::size_t a = 0; a < q_count; ++a) {
    for (std::size_t b = 0; b < q_count; ++b) {
      if (a == b) continue;
      double acc = 0.0;
      for (std::size_t mi = 0; mi < lambda.m; ++mi) {
        const double la = lambda(a, mi);
        const double lb = lambda(b, mi);
        acc += 0.5 * (std::log(la) + std::log(lb)) - std::log(la + lb);
      }
      logs.push_back(acc);
    }
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double s = 0.0;
  for (double l : logs) s += std::exp(l - top);
  const double log_sum = top + std::log(s) + static_cast<double>(lambda.m) * std::numbers::ln2 -
                         std::log(static_cast<double>(q_count));
  return std::max(0.0, std::log2(static_cast<double>(q_count)) - log2_one_plus_exp(log_sum));
}

CapacityEstimate c4_lower(const Scenario& sc, const TrialPlan& plan) {
  sc.validate();
  const double inv_m = 1.0 / static_cast<double>(sc.frame.m);
  return run_estimate(plan, [&](RandomStream& rng) {
    const SeparatedRealization r = draw_separated_realization(sc, rng);
    const LambdaSpectrum l = lambda_spectrum(r, sc.constellation, sc.sigma_s_sq, sc.sigma_v4_sq);
    return inv_m * cutoff_rate_realization_sep(l);
  });
}

CapacityEstimate c4_upper(const Scenario& sc, const TrialPlan& plan) {
  sc.validate();
  const double inv_m = 1.0 / static_cast<double>(sc.frame.m);
  return run_estimate(plan, [&](RandomStream& rng) {
    const SeparatedRealization r = draw_separated_realization(sc, rng);
    return inv_m * std::log2(1.0 + r.snr_b4 * r.theta124);
  });
}

double c4_upper_large_m(const Scenario& sc) {
  const NetworkGeometry& g = sc.geometry;
  const double m = static_cast<double>(sc.frame.m);
  return std::log2(1.0 + sc.snr_b4() * m * sc.sigma_s_sq * std::pow(g.d12 * g.d24(), -g.eta)) / m;
}

double bpsk_product_factor(std::span<const double> lambda_common,
                           std::span<const double> lambda_cross) {
  if (lambda_common.size() != lambda_cross.size()) {
    throw std::invalid_argument("bpsk_product_factor: length mismatch");
  }
  double log_prod = 0.0;
  for (std::size_t k = 0; k < lambda_common.size(); ++k) {
    const double ratio = lambda_cross[k] / lambda_common[k];
    if (!(std::abs(ratio) <= 1.0 + kIdentityTol)) {
      throw ConsistencyError("bpsk_product_factor: |cross| exceeds common variance");
    }
    const double radicand = std::max(0.0, 1.0 - ratio * ratio);
    log_prod += 0.5 * std::log(radicand);
  }
  return std::exp(log_prod);
}

double bpsk_cutoff_from_product(double product) { return 1.0 - std::log2(1.0 + product); }

void bpsk_lambda_parts(const SeparatedRealization& r, double alpha, double sigma_s_sq,
                       double sigma_v4_sq, std::vector<double>& common, std::vector<double>& cross) {
  const std::size_t m = r.psi12.size();
  common.resize(m);
  cross.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const cplx g = r.psi12[k] * r.psi24[k];
    const cplx h = r.psi14[k];
    common[k] = sigma_s_sq * (alpha * alpha * std::norm(g) + std::norm(h)) + sigma_v4_sq;
    cross[k] = 2.0 * alpha * sigma_s_sq * std::real(g * std::conj(h));
  }
}

double d_ratio(double d12, double d14, double theta, double eta, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("d_ratio: alpha must be positive");
  const double d24 = carnot_distance(d12, d14, theta);
  return std::pow(d12 * d24 / d14, eta) / (alpha * alpha);
}

double j_of_d(double d) {
  if (!(d > 0.0)) return 0.0;
  if (std::isinf(d)) return 0.0;
  return 1.0 / (1.0 + 2.0 / d + d);
}

double j_function(double d12, double d14, double theta, double eta, double alpha) {
  return j_of_d(d_ratio(d12, d14, theta, eta, alpha));
}

double bpsk_lower_closed_form(double j, std::size_t m) {
  const double md = static_cast<double>(m);
  return (1.0 - std::log2(1.0 + std::pow(1.0 - j, md / 2.0))) / md;
}

double bpsk_lower_closed_form(const Scenario& sc) {
  const Constellation& c = sc.constellation;
  if (c.size() != 2 || !c.constant_modulus() || std::abs(c.points()[0] + c.points()[1]) > 1e-12) {
    throw std::invalid_argument("bpsk_lower_closed_form: requires an antipodal binary constellation");
  }
  const NetworkGeometry& g = sc.geometry;
  return bpsk_lower_closed_form(j_function(g.d12, g.d14, g.theta, g.eta, sc.alpha()), sc.frame.m);
}

}  // namespace ambsim
