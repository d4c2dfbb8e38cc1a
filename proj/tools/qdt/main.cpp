/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "qdt/qdt.h"

using namespace qdtcli;

namespace {

int env_workers() {
  const char* env = std::getenv("QDT_WORKERS");
  if (!env) return 0;
  return std::atoi(env);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qdt - thermodynamics of a laser-driven two-level emitter in a "
      "phonon bath"};
  app.set_version_flag("--version", std::string(qdt_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<long long> seed_flag;
  std::optional<int> workers_flag;
  bool gnuplot_stub = false;
  app.add_option("--config", config_path, "JSON experiment configuration");
  app.add_option("--out-dir", out_dir,
                 "output directory (default: config output.directory)");
  app.add_option("--seed", seed_flag, "override the config seed");
  app.add_option("--workers", workers_flag,
                 "worker threads (overrides QDT_WORKERS and the config key)");
  app.add_flag("--gnuplot-stub", gnuplot_stub,
               "also emit a ready-to-run gnuplot script per output");

  const char* names[] = {"pulse-preview",   "evolve",
                         "heat-sweep",      "efficiency-sweep",
                         "ts",              "heat-distribution",
                         "cooling-map",     "oracle-mc",
                         "selftest"};
  const char* descriptions[] = {
      "sample Omega(t), Delta(t) and the dressed splitting",
      "integrate the master equation and dump the trajectory",
      "mean-heat surface over (chirp, pulse area), one CSV per detuning",
      "engine-efficiency surface over (chirp, pulse area)",
      "temperature-entropy rows for the configured pulse",
      "scan the characteristic function and reconstruct P(Q)",
      "steady-state cooling and laser-heating surfaces",
      "Monte Carlo jump-unraveling histogram and statistics",
      "run the built-in invariant checks"};
  for (int i = 0; i < 9; ++i) app.add_subcommand(names[i], descriptions[i]);

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    RunContext ctx;
    ctx.config = config_path.empty() ? default_config()
                                     : load_config(config_path);
    // Precedence: flag > environment > config key > default.
    if (const int env = env_workers(); env > 0) ctx.config.workers = env;
    if (workers_flag) ctx.config.workers = *workers_flag;
    if (seed_flag) ctx.config.seed = static_cast<uint64_t>(*seed_flag);
    ctx.out_dir = out_dir.empty() ? ctx.config.output.directory : out_dir;
    ctx.gnuplot_stub = gnuplot_stub;

    if (sub == "pulse-preview") return cmd_pulse_preview(ctx);
    if (sub == "evolve") return cmd_evolve(ctx);
    if (sub == "heat-sweep") return cmd_heat_sweep(ctx);
    if (sub == "efficiency-sweep") return cmd_efficiency_sweep(ctx);
    if (sub == "ts") return cmd_ts(ctx);
    if (sub == "heat-distribution") return cmd_heat_distribution(ctx);
    if (sub == "cooling-map") return cmd_cooling_map(ctx);
    if (sub == "oracle-mc") return cmd_oracle_mc(ctx);
    if (sub == "selftest") return cmd_selftest(ctx.config.workers);
    std::cerr << "unknown subcommand '" << sub << "'\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
