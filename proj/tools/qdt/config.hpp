/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "qdt/qdt.h"

namespace qdtcli {

using Json = nlohmann::json;

struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int n = 1;
  std::vector<double> values;  // explicit list wins over min/max/n

  std::vector<double> expand() const;
};

struct SweepConfig {
  AxisSpec chirp_a_ps2{-20.0, 20.0, 41, {}};
  AxisSpec theta0_over_pi{0.25, 10.0, 40, {}};
  std::vector<double> delta0_values_ps_inv{0.0};
  AxisSpec delta_ps_inv{-5.0, 5.0, 41, {}};   // cooling map axis
  AxisSpec omega_ps_inv{0.125, 5.0, 41, {}};  // cooling map axis
};

struct CountingConfig {
  int n = 1024;
  double du_ps = 0.0;  // 0: auto
  bool apodize = false;
  std::optional<double> at_time_ps;
  bool emit_mev = false;
};

struct OracleConfig {
  long n_trajectories = 100000;
};

struct EngineConfig {
  double hot_T_K = 20.0;
  double cold_T_K = 2.7;
};

struct OutputConfig {
  std::string directory = "out";
};

/// Fully-resolved experiment configuration. Parsing rejects unknown keys
/// and validates units/signs before anything runs.
struct Config {
  qdt_pulse_params pulse{2.0, 6.0 * 3.14159265358979323846, 0.0, 0.0, 0.0};
  qdt_bath_params bath{QDT_SPECTRAL_GAUSSIAN_CUTOFF, 0.027, 2.2, 20.0};
  qdt_evolve_options evolution{};
  CountingConfig counting{};
  EngineConfig engine{};
  qdt_cw_params cw{0.0, 1.0,
                   {QDT_SPECTRAL_EXPONENTIAL_CUTOFF, 0.005, 5.0, 20.0},
                   1e-3};
  qdt_absorption_params absorption{14.3, 1.47e22, 2.4};
  SweepConfig sweep{};
  OracleConfig oracle{};
  OutputConfig output{};
  uint64_t seed = 42;
  int workers = 0;

  Config();

  /// Echo of the fully-resolved configuration for the run manifest.
  Json resolved() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and validates a config file; throws ConfigError with a key path
/// on any unknown key, wrong type, or out-of-range value.
Config load_config(const std::string& path);

/// Defaults only (no file).
Config default_config();

}  // namespace qdtcli
