/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>

#include "config.hpp"

namespace qdtcli {

struct RunContext {
  Config config;
  std::string out_dir;
  bool gnuplot_stub = false;
};

int cmd_pulse_preview(const RunContext& ctx);
int cmd_evolve(const RunContext& ctx);
int cmd_heat_sweep(const RunContext& ctx);
int cmd_efficiency_sweep(const RunContext& ctx);
int cmd_ts(const RunContext& ctx);
int cmd_heat_distribution(const RunContext& ctx);
int cmd_cooling_map(const RunContext& ctx);
int cmd_oracle_mc(const RunContext& ctx);
int cmd_selftest(int workers);

}  // namespace qdtcli
