#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eonsim/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic optical network simulator for itinerant-connection reconfiguration"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string in_dir;
  int jobs = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;

  CLI::App* sim = app.add_subcommand("simulate", "run the configured sweep and write CSVs");
  sim->add_option("--config", config_path, "sweep configuration file")
      ->required()
      ->envname("EONSIM_CONFIG");
  sim->add_option("--jobs", jobs, "parallel runs (default: hardware threads)")
      ->envname("EONSIM_JOBS");
  sim->add_option("--out", out_dir, "output directory (overrides config)")
      ->envname("EONSIM_OUT");
  auto* seed_opt = sim->add_option("--seed", seed, "base seed (overrides config)")
                       ->envname("EONSIM_SEED");

  CLI::App* stats = app.add_subcommand("stats", "re-aggregate populations.csv from runs.csv");
  stats->add_option("--in", in_dir, "directory holding runs.csv")
      ->required()
      ->envname("EONSIM_IN");

  CLI11_PARSE(app, argc, argv);
  seed_set = seed_opt->count() > 0;

  try {
    if (sim->parsed()) {
      eonsim::SweepConfig cfg = eonsim::parse_config(read_file(config_path));
      if (jobs >= 0) cfg.jobs = jobs;
      if (!out_dir.empty()) cfg.out = out_dir;
      if (seed_set) cfg.seed = seed;
      return eonsim::run_sweep(cfg);
    }
    return eonsim::reaggregate(in_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
