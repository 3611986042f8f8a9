// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#include "ambsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "ambsim/errors.hpp"

namespace ambsim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_plain_double(std::string_view s, std::string_view key) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("config: '" + std::string(key) + "' expects a number, got '" +
                      std::string(s) + "'");
  }
  return v;
}

// Accepts plain numbers and the angle forms `pi`, `pi/N`, `K*pi`, `K*pi/N`.
double parse_real(std::string_view s, std::string_view key) {
  s = trim(s);
  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) return parse_plain_double(s, key);
  double factor = 1.0;
  if (pos > 0) {
    std::string_view head = trim(s.substr(0, pos));
    if (head.empty() || head.back() != '*') {
      throw ConfigError("config: '" + std::string(key) + "' has a malformed pi expression");
    }
    factor = parse_plain_double(head.substr(0, head.size() - 1), key);
  }
  std::string_view tail = trim(s.substr(pos + 2));
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') {
      throw ConfigError("config: '" + std::string(key) + "' has a malformed pi expression");
    }
    divisor = parse_plain_double(tail.substr(1), key);
  }
  return factor * std::numbers::pi / divisor;
}

std::uint64_t parse_uint(std::string_view s, std::string_view key) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) return v;
  // Allow 1e5-style counts.
  const double d = parse_plain_double(s, key);
  if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
    throw ConfigError("config: '" + std::string(key) + "' expects a non-negative integer");
  }
  return static_cast<std::uint64_t>(d);
}

int parse_int(std::string_view s, std::string_view key) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("config: '" + std::string(key) + "' expects an integer");
  }
  return v;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const std::string_view item = trim(s.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::array<double, 2> parse_point(std::string_view s, std::string_view key) {
  const auto parts = split_list(s);
  if (parts.size() != 2) {
    throw ConfigError("config: '" + std::string(key) + "' expects 'x, y'");
  }
  return {parse_plain_double(parts[0], key), parse_plain_double(parts[1], key)};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

using Setter = std::function<void(ScenarioConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["frame.M"] = [](ScenarioConfig& c, auto k, auto v) { c.m = parse_uint(v, k); };
    t["frame.L_cp"] = [](ScenarioConfig& c, auto k, auto v) { c.cp = parse_uint(v, k); };
    t["links.all.order"] = [](ScenarioConfig& c, auto k, auto v) {
      const int o = parse_int(v, k);
      for (auto& l : c.links) l.order = o;
    };
    t["links.all.to"] = [](ScenarioConfig& c, auto k, auto v) {
      const int o = parse_int(v, k);
      for (auto& l : c.links) l.time_offset = o;
    };
    for (std::size_t i = 0; i < kLinkCount; ++i) {
      const std::string name(to_string(static_cast<LinkId>(i)));
      t["links." + name + ".order"] = [i](ScenarioConfig& c, auto k, auto v) {
        c.links[i].order = parse_int(v, k);
      };
      t["links." + name + ".to"] = [i](ScenarioConfig& c, auto k, auto v) {
        c.links[i].time_offset = parse_int(v, k);
      };
    }
    t["geometry.node1"] = [](ScenarioConfig& c, auto k, auto v) { c.node1 = parse_point(v, k); };
    t["geometry.node3"] = [](ScenarioConfig& c, auto k, auto v) { c.node3 = parse_point(v, k); };
    t["geometry.d12_ratio"] = [](ScenarioConfig& c, auto k, auto v) { c.d12_ratio = parse_real(v, k); };
    t["geometry.d14"] = [](ScenarioConfig& c, auto k, auto v) { c.d14 = parse_real(v, k); };
    t["geometry.phi"] = [](ScenarioConfig& c, auto k, auto v) { c.phi = parse_real(v, k); };
    t["geometry.theta"] = [](ScenarioConfig& c, auto k, auto v) { c.theta = parse_real(v, k); };
    t["geometry.eta"] = [](ScenarioConfig& c, auto k, auto v) { c.eta = parse_real(v, k); };
    t["power.snr_l_db"] = [](ScenarioConfig& c, auto k, auto v) { c.snr_l_db = parse_real(v, k); };
    t["power.sigma_s_sq"] = [](ScenarioConfig& c, auto k, auto v) { c.sigma_s_sq = parse_real(v, k); };
    t["power.alpha_sq"] = [](ScenarioConfig& c, auto k, auto v) { c.alpha_sq = parse_real(v, k); };
    t["power.alpha_sq_db"] = [](ScenarioConfig& c, auto k, auto v) {
      c.alpha_sq = from_db(parse_real(v, k));
    };
    t["power.sigma_v1_sq"] = [](ScenarioConfig& c, auto k, auto v) {
      c.sigma_v1_sq = parse_real(v, k);
      c.snr_b1_db.reset();
    };
    t["power.snr_b1_db"] = [](ScenarioConfig& c, auto k, auto v) {
      c.snr_b1_db = parse_real(v, k);
      c.sigma_v1_sq.reset();
    };
    t["power.sigma_v4_sq"] = [](ScenarioConfig& c, auto k, auto v) {
      c.sigma_v4_sq = parse_real(v, k);
      c.snr_b4_db.reset();
    };
    t["power.snr_b4_db"] = [](ScenarioConfig& c, auto k, auto v) {
      c.snr_b4_db = parse_real(v, k);
      c.sigma_v4_sq.reset();
    };
    t["power.self_interference"] = [](ScenarioConfig& c, auto k, auto v) {
      c.self_interference_variance = parse_real(v, k);
    };
    t["constellation.kind"] = [](ScenarioConfig& c, auto, auto v) {
      try {
        c.constellation = parse_constellation_kind(trim(v));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    };
    t["constellation.normalization"] = [](ScenarioConfig& c, auto, auto v) {
      try {
        c.ask_normalization = parse_ask_normalization(trim(v));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    };
    t["mc.trials"] = [](ScenarioConfig& c, auto k, auto v) { c.trials = parse_uint(v, k); };
    t["mc.seed"] = [](ScenarioConfig& c, auto k, auto v) { c.seed = parse_uint(v, k); };
    t["mc.workers"] = [](ScenarioConfig& c, auto k, auto v) {
      c.workers = static_cast<unsigned>(parse_uint(v, k));
    };
    t["mc.batch_size"] = [](ScenarioConfig& c, auto k, auto v) { c.batch_size = parse_uint(v, k); };
    t["mc.mi_samples"] = [](ScenarioConfig& c, auto k, auto v) { c.mi_samples = parse_uint(v, k); };
    t["mc.sampling"] = [](ScenarioConfig& c, auto, auto v) {
      try {
        c.sampling = parse_psi_sampling(trim(v));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    };
    t["rate.rs"] = [](ScenarioConfig& c, auto k, auto v) { c.rate_rs = parse_real(v, k); };
    t["legacy.high_snr_variant"] = [](ScenarioConfig& c, auto, auto v) {
      const auto s = trim(v);
      if (s == "audit") {
        c.high_snr_variant = HighSnrVariant::DimensionalAudit;
      } else if (s == "strict") {
        c.high_snr_variant = HighSnrVariant::Literal;
      } else {
        throw ConfigError("config: legacy.high_snr_variant must be 'audit' or 'strict'");
      }
    };
    t["run.quantities"] = [](ScenarioConfig& c, auto, auto v) { c.quantities = split_list(v); };
    return t;
  }();
  return table;
}

}  // namespace

ScenarioConfig::ScenarioConfig() : phi(std::numbers::pi / 18.0), theta(std::numbers::pi / 18.0) {}

double ScenarioConfig::d13() const {
  return std::hypot(node3[0] - node1[0], node3[1] - node1[1]);
}

void set_config_value(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  const auto& t = setters();
  const auto it = t.find(trim(key));
  if (it == t.end()) throw ConfigError("config: unknown key '" + std::string(trim(key)) + "'");
  it->second(cfg, trim(key), value);
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      set_config_value(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "frame.M = " << c.m << "\n";
  os << "frame.L_cp = " << c.cp << "\n";
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    const std::string name(to_string(static_cast<LinkId>(i)));
    os << "links." << name << ".order = " << c.links[i].order << "\n";
    os << "links." << name << ".to = " << c.links[i].time_offset << "\n";
  }
  os << "geometry.node1 = " << fmt(c.node1[0]) << ", " << fmt(c.node1[1]) << "\n";
  os << "geometry.node3 = " << fmt(c.node3[0]) << ", " << fmt(c.node3[1]) << "\n";
  os << "geometry.d12_ratio = " << fmt(c.d12_ratio) << "\n";
  os << "geometry.d14 = " << fmt(c.d14) << "\n";
  os << "geometry.phi = " << fmt(c.phi) << "\n";
  os << "geometry.theta = " << fmt(c.theta) << "\n";
  os << "geometry.eta = " << fmt(c.eta) << "\n";
  os << "power.snr_l_db = " << fmt(c.snr_l_db) << "\n";
  os << "power.sigma_s_sq = " << fmt(c.sigma_s_sq) << "\n";
  os << "power.alpha_sq = " << fmt(c.alpha_sq) << "\n";
  if (c.sigma_v1_sq) os << "power.sigma_v1_sq = " << fmt(*c.sigma_v1_sq) << "\n";
  if (c.snr_b1_db) os << "power.snr_b1_db = " << fmt(*c.snr_b1_db) << "\n";
  if (c.sigma_v4_sq) os << "power.sigma_v4_sq = " << fmt(*c.sigma_v4_sq) << "\n";
  if (c.snr_b4_db) os << "power.snr_b4_db = " << fmt(*c.snr_b4_db) << "\n";
  os << "power.self_interference = " << fmt(c.self_interference_variance) << "\n";
  os << "constellation.kind = " << to_string(c.constellation) << "\n";
  os << "constellation.normalization = " << to_string(c.ask_normalization) << "\n";
  os << "mc.trials = " << c.trials << "\n";
  os << "mc.seed = " << c.seed << "\n";
  os << "mc.workers = " << c.workers << "\n";
  os << "mc.batch_size = " << c.batch_size << "\n";
  os << "mc.mi_samples = " << c.mi_samples << "\n";
  os << "mc.sampling = " << to_string(c.sampling) << "\n";
  os << "rate.rs = " << fmt(c.rate_rs) << "\n";
  os << "legacy.high_snr_variant = "
     << (c.high_snr_variant == HighSnrVariant::Literal ? "strict" : "audit") << "\n";
  os << "run.quantities = ";
  for (std::size_t i = 0; i < c.quantities.size(); ++i) os << (i ? ", " : "") << c.quantities[i];
  os << "\n";
  return os.str();
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_config(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Scenario build_scenario(const ScenarioConfig& c) {
  if (!(c.alpha_sq >= 0.0 && c.alpha_sq <= 1.0)) {
    throw ConditionViolation("power condition: 0 <= alpha^2 <= 1 violated: alpha^2 = " +
                             fmt(c.alpha_sq));
  }
  Scenario sc;
  sc.frame = {c.m, c.cp};
  sc.links = c.links;
  const double d13 = c.d13();
  sc.geometry = {c.d12_ratio * d13, d13, c.d14, c.phi, c.theta, c.eta};
  sc.sigma_s_sq = c.sigma_s_sq;
  sc.snr_l = from_db(c.snr_l_db);
  sc.self_interference_variance = c.self_interference_variance;
  sc.constellation = standard_constellation(c.constellation, std::sqrt(c.alpha_sq), c.ask_normalization);
  sc.sampling = c.sampling;

  auto noise = [&](const std::optional<double>& var, const std::optional<double>& snr_db,
                   const char* which) {
    if (var) return *var;
    const double signal = c.alpha_sq * sc.constellation.energy();
    if (!(signal > 0.0)) {
      // No backscatter signal: the SNR form is undefined, any noise level works.
      return 1.0;
    }
    if (!snr_db) throw ConditionViolation(std::string("power: no noise level for ") + which);
    return signal / from_db(*snr_db);
  };
  sc.sigma_v1_sq = noise(c.sigma_v1_sq, c.snr_b1_db, "node 1");
  sc.sigma_v4_sq = noise(c.sigma_v4_sq, c.snr_b4_db, "node 4");
  sc.validate();
  return sc;
}

TrialPlan trial_plan(const ScenarioConfig& cfg) {
  if (cfg.trials < 1) throw ConditionViolation("mc condition: trials >= 1 violated: 0 < 1");
  return {cfg.trials, cfg.seed, cfg.batch_size, cfg.workers};
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

}  // namespace ambsim
