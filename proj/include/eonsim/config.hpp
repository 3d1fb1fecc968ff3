#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "simulator.hpp"

namespace eonsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sweep description: the cross product of reconfiguration algorithms,
// routing algorithms, allocation policies and offered loads, each run
// `runs` times with seeds derived from `seed`.
struct SweepConfig {
  std::vector<ReconfigAlg> reconfigs{ReconfigAlg::Proposed, ReconfigAlg::Complete};
  std::vector<RoutingAlg::Kind> routings{RoutingAlg::Kind::Optimal, RoutingAlg::Kind::YenKsp,
                                         RoutingAlg::Kind::LdAsp};
  std::vector<Policy> policies{Policy::First, Policy::Fittest, Policy::Random};
  std::vector<double> loads;  // defaults to the 26-value sweep
  int runs = 100;
  std::uint64_t seed = 1;
  std::string out = "out";
  int jobs = 0;  // 0 = hardware concurrency

  int nodes = 100;
  double width_km = 1000;
  double height_km = 1000;
  int slices = 400;
  double horizon_h = 100;
  double beta_h = 10;
  double gamma = 10;
  double hop_shift_mean = 0.5;
  int yen_k = 10;
  long label_cap = 0;
  FailurePolicy on_reconfig_failure = FailurePolicy::Teardown;
  double warmup_h = 0;

  int population_count() const {
    return static_cast<int>(reconfigs.size() * routings.size() * policies.size() * loads.size());
  }
};

inline std::vector<double> default_loads() {
  std::vector<double> v;
  for (int i = 10; i <= 70; i += 5) v.push_back(i / 100.0);
  for (int i = 80; i <= 200; i += 10) v.push_back(i / 100.0);
  return v;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    auto comma = s.find(',');
    parts.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

[[noreturn]] inline void fail(int line_no, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line_no) + ": " + msg);
}

template <class T>
T number(std::string_view tok, int line_no, const char* what) {
  T v{};
  auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || p != end)
    fail(line_no, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  return v;
}

inline ReconfigAlg parse_reconfig(std::string_view v, int line_no) {
  if (v == "proposed") return ReconfigAlg::Proposed;
  if (v == "complete") return ReconfigAlg::Complete;
  fail(line_no, "invalid reconfig '" + std::string(v) + "' (allowed: proposed, complete)");
}

inline RoutingAlg::Kind parse_routing(std::string_view v, int line_no) {
  if (v == "optimal") return RoutingAlg::Kind::Optimal;
  if (v == "yen_ksp") return RoutingAlg::Kind::YenKsp;
  if (v == "ld_asp") return RoutingAlg::Kind::LdAsp;
  fail(line_no, "invalid routing '" + std::string(v) + "' (allowed: optimal, yen_ksp, ld_asp)");
}

inline Policy parse_policy(std::string_view v, int line_no) {
  if (v == "first") return Policy::First;
  if (v == "fittest") return Policy::Fittest;
  if (v == "random") return Policy::Random;
  fail(line_no, "invalid policy '" + std::string(v) + "' (allowed: first, fittest, random)");
}

}  // namespace detail

// `key = value` lines; lists are comma-separated, `#` starts a comment.
// Omitted keys take the full-scale defaults (100 nodes on 1000x1000 km, 400
// slices, 100 h horizon, beta 10, gamma 10, K 10, the 26-load sweep).
inline SweepConfig parse_config(const std::string& text) {
  SweepConfig cfg;
  cfg.loads = default_loads();
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line(text.data() + pos,
                          (eol == std::string::npos ? text.size() : eol) - pos);
    pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) detail::fail(line_no, "expected 'key = value'");
    std::string key{detail::trim(line.substr(0, eq))};
    std::string_view value = detail::trim(line.substr(eq + 1));
    if (value.empty()) detail::fail(line_no, "empty value for '" + key + "'");

    if (key == "reconfig") {
      cfg.reconfigs.clear();
      for (auto v : detail::split_list(value))
        cfg.reconfigs.push_back(detail::parse_reconfig(v, line_no));
    } else if (key == "routing") {
      cfg.routings.clear();
      for (auto v : detail::split_list(value))
        cfg.routings.push_back(detail::parse_routing(v, line_no));
    } else if (key == "policy") {
      cfg.policies.clear();
      for (auto v : detail::split_list(value))
        cfg.policies.push_back(detail::parse_policy(v, line_no));
    } else if (key == "loads") {
      cfg.loads.clear();
      for (auto v : detail::split_list(value))
        cfg.loads.push_back(detail::number<double>(v, line_no, "load"));
    } else if (key == "runs") {
      cfg.runs = detail::number<int>(value, line_no, "runs");
    } else if (key == "seed") {
      cfg.seed = detail::number<std::uint64_t>(value, line_no, "seed");
    } else if (key == "out") {
      cfg.out = std::string(value);
    } else if (key == "jobs") {
      cfg.jobs = detail::number<int>(value, line_no, "jobs");
    } else if (key == "nodes") {
      cfg.nodes = detail::number<int>(value, line_no, "nodes");
    } else if (key == "width_km") {
      cfg.width_km = detail::number<double>(value, line_no, "width_km");
    } else if (key == "height_km") {
      cfg.height_km = detail::number<double>(value, line_no, "height_km");
    } else if (key == "slices") {
      cfg.slices = detail::number<int>(value, line_no, "slices");
    } else if (key == "horizon_h") {
      cfg.horizon_h = detail::number<double>(value, line_no, "horizon_h");
    } else if (key == "beta_h") {
      cfg.beta_h = detail::number<double>(value, line_no, "beta_h");
    } else if (key == "gamma") {
      cfg.gamma = detail::number<double>(value, line_no, "gamma");
    } else if (key == "hop_shift_mean") {
      cfg.hop_shift_mean = detail::number<double>(value, line_no, "hop_shift_mean");
    } else if (key == "yen_k") {
      cfg.yen_k = detail::number<int>(value, line_no, "yen_k");
    } else if (key == "label_cap") {
      cfg.label_cap = detail::number<long>(value, line_no, "label_cap");
    } else if (key == "warmup_h") {
      cfg.warmup_h = detail::number<double>(value, line_no, "warmup_h");
    } else if (key == "on_reconfig_failure") {
      if (value == "teardown")
        cfg.on_reconfig_failure = FailurePolicy::Teardown;
      else if (value == "keep_old")
        cfg.on_reconfig_failure = FailurePolicy::KeepOld;
      else
        detail::fail(line_no, "invalid on_reconfig_failure '" + std::string(value) +
                                  "' (allowed: teardown, keep_old)");
    } else {
      detail::fail(line_no, "unknown key '" + key + "'");
    }
  }

  if (cfg.reconfigs.empty() || cfg.routings.empty() || cfg.policies.empty() ||
      cfg.loads.empty())
    throw ConfigError("empty sweep: every algorithm/policy/load list needs one entry");
  if (cfg.runs < 2) throw ConfigError("runs must be at least 2");
  if (cfg.nodes < 2) throw ConfigError("nodes must be at least 2");
  if (cfg.slices < 1) throw ConfigError("slices must be at least 1");
  if (cfg.width_km <= 0 || cfg.height_km <= 0) throw ConfigError("area must be positive");
  if (cfg.horizon_h <= 0) throw ConfigError("horizon_h must be positive");
  if (cfg.beta_h <= 0 || cfg.gamma < 1 || cfg.hop_shift_mean <= 0)
    throw ConfigError("traffic parameters must be positive (gamma at least 1)");
  if (cfg.yen_k < 1) throw ConfigError("yen_k must be at least 1");
  for (double mu : cfg.loads)
    if (mu <= 0) throw ConfigError("loads must be positive");
  return cfg;
}

inline const char* to_string(ReconfigAlg a) {
  return a == ReconfigAlg::Proposed ? "proposed" : "complete";
}

inline const char* to_string(RoutingAlg::Kind k) {
  switch (k) {
    case RoutingAlg::Kind::Optimal: return "optimal";
    case RoutingAlg::Kind::YenKsp: return "yen_ksp";
    case RoutingAlg::Kind::LdAsp: return "ld_asp";
  }
  return "?";
}

inline const char* to_string(Policy p) {
  switch (p) {
    case Policy::First: return "first";
    case Policy::Fittest: return "fittest";
    case Policy::Random: return "random";
  }
  return "?";
}

}  // namespace eonsim
