#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include "config.hpp"
#include "graph_io.hpp"

namespace eonsim {

// Run f(0..n-1) across up to `jobs` worker threads (0 = hardware default).
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  for (auto& th : pool) th.join();
}

struct PopulationKey {
  ReconfigAlg reconfig;
  RoutingAlg::Kind routing;
  Policy policy;
  double load;
};

inline RunConfig make_run_config(const SweepConfig& cfg, const PopulationKey& key,
                                 int run_index) {
  RunConfig rc;
  rc.nodes = cfg.nodes;
  rc.width_km = cfg.width_km;
  rc.height_km = cfg.height_km;
  rc.n_slices = cfg.slices;
  rc.traffic = {cfg.beta_h, cfg.gamma, cfg.hop_shift_mean, key.load};
  rc.routing = {key.routing, cfg.yen_k, cfg.label_cap};
  rc.reconfig = key.reconfig;
  rc.policy = key.policy;
  rc.sim_horizon_h = cfg.horizon_h;
  // The run seed depends on the run index alone, so every population sees
  // the same topology sample and reordering populations changes nothing.
  rc.seed = [&] {
    std::uint64_t s = cfg.seed;
    splitmix64(s);
    s ^= static_cast<std::uint64_t>(run_index) * 0x9e3779b97f4a7c15ULL;
    return splitmix64(s);
  }();
  rc.on_reconfig_failure = cfg.on_reconfig_failure;
  rc.warmup_h = cfg.warmup_h;
  return rc;
}

inline std::vector<PopulationKey> populations(const SweepConfig& cfg) {
  std::vector<PopulationKey> keys;
  for (ReconfigAlg r : cfg.reconfigs)
    for (RoutingAlg::Kind a : cfg.routings)
      for (Policy p : cfg.policies)
        for (double mu : cfg.loads) keys.push_back({r, a, p, mu});
  return keys;
}

namespace detail {

inline std::string csv_cell(const std::optional<double>& v) {
  return v ? fmt_double(*v) : std::string();
}

}  // namespace detail

inline std::string runs_csv_header() {
  std::string h = "reconfig,routing,policy,load,run,seed";
  for (const MetricField& m : kMetricFields) {
    h += ',';
    h += m.name;
  }
  return h;
}

inline std::string populations_csv_header() {
  std::string h = "reconfig,routing,policy,load,runs";
  for (const MetricField& m : kMetricFields) {
    h += ',';
    h += m.name;
    h += "_mean,";
    h += m.name;
    h += "_se,";
    h += m.name;
    h += "_rse";
  }
  return h;
}

inline void write_runs_csv(std::ostream& out, const std::vector<PopulationKey>& keys,
                           const std::vector<std::vector<RunReport>>& reports) {
  out << runs_csv_header() << "\n";
  for (std::size_t p = 0; p < keys.size(); ++p) {
    for (std::size_t r = 0; r < reports[p].size(); ++r) {
      const RunReport& rep = reports[p][r];
      out << to_string(keys[p].reconfig) << ',' << to_string(keys[p].routing) << ','
          << to_string(keys[p].policy) << ',' << detail::fmt_double(keys[p].load) << ',' << r
          << ',' << rep.seed;
      for (const MetricField& m : kMetricFields)
        out << ',' << detail::csv_cell(rep.*(m.field));
      out << "\n";
    }
  }
}

inline void write_populations_csv(std::ostream& out, const std::vector<PopulationKey>& keys,
                                  const std::vector<std::vector<RunReport>>& reports) {
  out << populations_csv_header() << "\n";
  for (std::size_t p = 0; p < keys.size(); ++p) {
    PopulationStats stats = population_mean(reports[p]);
    out << to_string(keys[p].reconfig) << ',' << to_string(keys[p].routing) << ','
        << to_string(keys[p].policy) << ',' << detail::fmt_double(keys[p].load) << ','
        << reports[p].size();
    for (std::size_t m = 0; m < kMetricFields.size(); ++m) {
      const MetricAggregate& agg = stats[m];
      out << ',' << detail::csv_cell(agg.mean) << ',' << detail::csv_cell(agg.se) << ','
          << detail::csv_cell(agg.rse);
    }
    out << "\n";
  }
}

// Execute the whole sweep and write runs.csv and populations.csv into
// cfg.out.  Runs are independent and execute in parallel; a failed run
// aborts its population (with stderr diagnostics) while the others
// continue.  Returns a process exit status.
inline int run_sweep(const SweepConfig& cfg, std::ostream& err = std::cerr) {
  std::vector<PopulationKey> keys = populations(cfg);
  const std::size_t n_pops = keys.size();
  const std::size_t n_runs = static_cast<std::size_t>(cfg.runs);
  std::vector<std::vector<RunReport>> reports(n_pops,
                                              std::vector<RunReport>(n_runs));
  std::vector<std::string> failures(n_pops);
  std::vector<std::unique_ptr<std::atomic<bool>>> failed;
  for (std::size_t p = 0; p < n_pops; ++p)
    failed.push_back(std::make_unique<std::atomic<bool>>(false));

  parallel_for(n_pops * n_runs, cfg.jobs, [&](std::size_t i) {
    std::size_t p = i / n_runs, r = i % n_runs;
    if (failed[p]->load()) return;
    try {
      reports[p][r] = run(make_run_config(cfg, keys[p], static_cast<int>(r)));
    } catch (const std::exception& e) {
      bool expect = false;
      if (failed[p]->compare_exchange_strong(expect, true))
        failures[p] = std::string("run ") + std::to_string(r) + ": " + e.what();
    }
  });

  int status = 0;
  std::vector<PopulationKey> ok_keys;
  std::vector<std::vector<RunReport>> ok_reports;
  for (std::size_t p = 0; p < n_pops; ++p) {
    if (failed[p]->load()) {
      err << "population " << to_string(keys[p].reconfig) << '/' << to_string(keys[p].routing)
          << '/' << to_string(keys[p].policy) << "/mu=" << detail::fmt_double(keys[p].load)
          << " aborted: " << failures[p] << "\n";
      status = 1;
      continue;
    }
    ok_keys.push_back(keys[p]);
    ok_reports.push_back(std::move(reports[p]));
  }

  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  auto write_file = [&](const char* name, auto&& writer) {
    std::filesystem::path path = std::filesystem::path(cfg.out) / name;
    std::ofstream f(path, std::ios::trunc);
    if (!f) {
      err << "cannot write " << path.string() << "\n";
      status = 1;
      return;
    }
    writer(f);
    if (!f.good()) {
      err << "write failed for " << path.string() << "\n";
      status = 1;
    }
  };
  write_file("runs.csv", [&](std::ostream& f) { write_runs_csv(f, ok_keys, ok_reports); });
  write_file("populations.csv",
             [&](std::ostream& f) { write_populations_csv(f, ok_keys, ok_reports); });
  return status;
}

// --- re-aggregation (the `stats` subcommand) ------------------------------

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    cells.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return cells;
}

}  // namespace detail

// Rebuild populations.csv from an existing runs.csv.
inline int reaggregate(const std::string& dir, std::ostream& err = std::cerr) {
  std::filesystem::path runs_path = std::filesystem::path(dir) / "runs.csv";
  std::ifstream in(runs_path);
  if (!in) {
    err << "cannot read " << runs_path.string() << "\n";
    return 1;
  }
  std::string line;
  if (!std::getline(in, line) || line != runs_csv_header()) {
    err << runs_path.string() << ": unexpected header\n";
    return 1;
  }
  std::vector<PopulationKey> keys;
  std::vector<std::string> key_tags;
  std::vector<std::vector<RunReport>> reports;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() != 6 + kMetricFields.size()) {
      err << runs_path.string() << ":" << line_no << ": wrong column count\n";
      return 1;
    }
    std::string tag = cells[0] + "," + cells[1] + "," + cells[2] + "," + cells[3];
    std::size_t p = 0;
    for (; p < key_tags.size(); ++p)
      if (key_tags[p] == tag) break;
    if (p == key_tags.size()) {
      key_tags.push_back(tag);
      PopulationKey key;
      try {
        key.reconfig = detail::parse_reconfig(cells[0], line_no);
        key.routing = detail::parse_routing(cells[1], line_no);
        key.policy = detail::parse_policy(cells[2], line_no);
        key.load = detail::parse_num<double>(cells[3], "load");
      } catch (const std::exception& e) {
        err << runs_path.string() << ":" << line_no << ": " << e.what() << "\n";
        return 1;
      }
      keys.push_back(key);
      reports.emplace_back();
    }
    RunReport rep;
    rep.seed = detail::parse_num<std::uint64_t>(cells[5], "seed");
    for (std::size_t m = 0; m < kMetricFields.size(); ++m)
      if (!cells[6 + m].empty())
        rep.*(kMetricFields[m].field) = detail::parse_num<double>(cells[6 + m], "metric");
    reports[p].push_back(rep);
  }
  for (std::size_t p = 0; p < keys.size(); ++p) {
    if (reports[p].size() < 2) {
      err << "population " << key_tags[p] << " has fewer than two runs\n";
      return 1;
    }
  }
  std::filesystem::path pop_path = std::filesystem::path(dir) / "populations.csv";
  std::ofstream out(pop_path, std::ios::trunc);
  if (!out) {
    err << "cannot write " << pop_path.string() << "\n";
    return 1;
  }
  write_populations_csv(out, keys, reports);
  return out.good() ? 0 : 1;
}

}  // namespace eonsim
