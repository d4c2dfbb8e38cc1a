/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace qdtcli {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config key '" + path + "': " + what);
}

void reject_unknown(const Json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key))
      fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double get_number(const Json& obj, const std::string& path,
                  const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

long get_integer(const Json& obj, const std::string& path,
                 const std::string& key, long fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) fail(path + "." + key, "expected an integer");
  return obj[key].get<long>();
}

bool get_bool(const Json& obj, const std::string& path, const std::string& key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) fail(path + "." + key, "expected a boolean");
  return obj[key].get<bool>();
}

AxisSpec parse_axis(const Json& obj, const std::string& path,
                    const AxisSpec& fallback) {
  AxisSpec axis = fallback;
  if (obj.is_array()) {
    axis.values.clear();
    for (const auto& v : obj) {
      if (!v.is_number()) fail(path, "axis list entries must be numbers");
      axis.values.push_back(v.get<double>());
    }
    if (axis.values.empty()) fail(path, "axis list is empty");
    return axis;
  }
  if (!obj.is_object()) fail(path, "expected {min, max, n} or a list");
  reject_unknown(obj, path, {"min", "max", "n"});
  axis.min = get_number(obj, path, "min", fallback.min);
  axis.max = get_number(obj, path, "max", fallback.max);
  axis.n = static_cast<int>(get_integer(obj, path, "n", fallback.n));
  axis.values.clear();
  if (axis.n < 1) fail(path + ".n", "must be >= 1");
  if (axis.n > 1 && !(axis.max > axis.min)) fail(path, "needs max > min");
  return axis;
}

void parse_pulse(const Json& obj, Config& cfg) {
  reject_unknown(obj, "pulse",
                 {"shape", "tau0_ps", "theta0_over_pi", "chirp_a_ps2",
                  "delta0_ps_inv", "t_center_ps"});
  if (obj.contains("shape")) {
    const std::string shape = obj["shape"].get<std::string>();
    if (shape != "chirped_gaussian")
      fail("pulse.shape", "only 'chirped_gaussian' is implemented");
  }
  cfg.pulse.tau0_ps = get_number(obj, "pulse", "tau0_ps", cfg.pulse.tau0_ps);
  cfg.pulse.theta0_rad =
      get_number(obj, "pulse", "theta0_over_pi",
                 cfg.pulse.theta0_rad / kPi) * kPi;
  cfg.pulse.chirp_a_ps2 =
      get_number(obj, "pulse", "chirp_a_ps2", cfg.pulse.chirp_a_ps2);
  cfg.pulse.delta0_ps_inv =
      get_number(obj, "pulse", "delta0_ps_inv", cfg.pulse.delta0_ps_inv);
  cfg.pulse.t_center_ps =
      get_number(obj, "pulse", "t_center_ps", cfg.pulse.t_center_ps);
  if (!(cfg.pulse.tau0_ps > 0.0)) fail("pulse.tau0_ps", "must be positive");
  if (cfg.pulse.theta0_rad < 0.0)
    fail("pulse.theta0_over_pi", "must be nonnegative");
}

int parse_spectral_form(const Json& obj, const std::string& path,
                        int fallback) {
  if (!obj.contains("form")) return fallback;
  const std::string form = obj["form"].get<std::string>();
  if (form == "super_ohmic_gaussian_cutoff") return QDT_SPECTRAL_GAUSSIAN_CUTOFF;
  if (form == "super_ohmic_exponential_cutoff")
    return QDT_SPECTRAL_EXPONENTIAL_CUTOFF;
  fail(path + ".form",
       "expected 'super_ohmic_gaussian_cutoff' or "
       "'super_ohmic_exponential_cutoff'");
}

void parse_bath_into(const Json& obj, const std::string& path,
                     qdt_bath_params& bath) {
  reject_unknown(obj, path,
                 {"form", "amplitude_ps2", "omega_c_ps_inv", "temperature_K"});
  bath.form = parse_spectral_form(obj, path, bath.form);
  bath.amplitude_ps2 =
      get_number(obj, path, "amplitude_ps2", bath.amplitude_ps2);
  bath.cutoff_ps_inv =
      get_number(obj, path, "omega_c_ps_inv", bath.cutoff_ps_inv);
  bath.temperature_K =
      get_number(obj, path, "temperature_K", bath.temperature_K);
  if (bath.amplitude_ps2 < 0.0) fail(path + ".amplitude_ps2", "must be >= 0");
  if (!(bath.cutoff_ps_inv > 0.0))
    fail(path + ".omega_c_ps_inv", "must be positive");
  if (bath.temperature_K < 0.0) fail(path + ".temperature_K", "must be >= 0");
}

void parse_evolution(const Json& obj, Config& cfg) {
  reject_unknown(obj, "evolution",
                 {"t_start_ps", "t_end_ps", "rel_tol", "abs_tol",
                  "max_step_ps", "n_samples"});
  cfg.evolution.t_start_ps =
      get_number(obj, "evolution", "t_start_ps", cfg.evolution.t_start_ps);
  cfg.evolution.t_end_ps =
      get_number(obj, "evolution", "t_end_ps", cfg.evolution.t_end_ps);
  cfg.evolution.rel_tol =
      get_number(obj, "evolution", "rel_tol", cfg.evolution.rel_tol);
  cfg.evolution.abs_tol =
      get_number(obj, "evolution", "abs_tol", cfg.evolution.abs_tol);
  cfg.evolution.max_step_ps =
      get_number(obj, "evolution", "max_step_ps", cfg.evolution.max_step_ps);
  cfg.evolution.n_samples = static_cast<int>(
      get_integer(obj, "evolution", "n_samples", cfg.evolution.n_samples));
  if (cfg.evolution.rel_tol <= 0.0 || cfg.evolution.rel_tol > 1e-2)
    fail("evolution.rel_tol", "must lie in (0, 1e-2]");
  if (cfg.evolution.abs_tol <= 0.0 || cfg.evolution.abs_tol > 1e-2)
    fail("evolution.abs_tol", "must lie in (0, 1e-2]");
  if (cfg.evolution.n_samples < 2) fail("evolution.n_samples", "must be >= 2");
}

void parse_counting(const Json& obj, Config& cfg) {
  reject_unknown(obj, "counting",
                 {"n", "du_ps", "apodize", "at_time_ps", "emit_mev"});
  cfg.counting.n =
      static_cast<int>(get_integer(obj, "counting", "n", cfg.counting.n));
  cfg.counting.du_ps = get_number(obj, "counting", "du_ps", cfg.counting.du_ps);
  cfg.counting.apodize =
      get_bool(obj, "counting", "apodize", cfg.counting.apodize);
  cfg.counting.emit_mev =
      get_bool(obj, "counting", "emit_mev", cfg.counting.emit_mev);
  if (obj.contains("at_time_ps"))
    cfg.counting.at_time_ps = get_number(obj, "counting", "at_time_ps", 0.0);
  if (cfg.counting.n < 2 || (cfg.counting.n & (cfg.counting.n - 1)) != 0)
    fail("counting.n", "must be a power of two >= 2");
}

void parse_engine(const Json& obj, Config& cfg) {
  reject_unknown(obj, "engine", {"hot_T_K", "cold_T_K"});
  cfg.engine.hot_T_K = get_number(obj, "engine", "hot_T_K", cfg.engine.hot_T_K);
  cfg.engine.cold_T_K =
      get_number(obj, "engine", "cold_T_K", cfg.engine.cold_T_K);
  if (!(cfg.engine.cold_T_K > 0.0) ||
      !(cfg.engine.cold_T_K < cfg.engine.hot_T_K))
    fail("engine", "needs 0 < cold_T_K < hot_T_K");
}

void parse_cw(const Json& obj, Config& cfg) {
  reject_unknown(obj, "cw",
                 {"delta_ps_inv", "omega_ps_inv", "gamma_sp_ns_inv", "bath"});
  cfg.cw.delta_ps_inv =
      get_number(obj, "cw", "delta_ps_inv", cfg.cw.delta_ps_inv);
  cfg.cw.omega_ps_inv =
      get_number(obj, "cw", "omega_ps_inv", cfg.cw.omega_ps_inv);
  cfg.cw.gamma_sp_ps_inv =
      get_number(obj, "cw", "gamma_sp_ns_inv",
                 cfg.cw.gamma_sp_ps_inv * 1e3) * 1e-3;
  if (cfg.cw.gamma_sp_ps_inv < 0.0) fail("cw.gamma_sp_ns_inv", "must be >= 0");
  if (obj.contains("bath")) parse_bath_into(obj["bath"], "cw.bath", cfg.cw.bath);
}

void parse_absorption(const Json& obj, Config& cfg) {
  reject_unknown(obj, "absorption",
                 {"dipole_debye", "density_over_absorption_m2",
                  "refractive_index"});
  cfg.absorption.dipole_debye =
      get_number(obj, "absorption", "dipole_debye", cfg.absorption.dipole_debye);
  cfg.absorption.density_over_absorption_m2 =
      get_number(obj, "absorption", "density_over_absorption_m2",
                 cfg.absorption.density_over_absorption_m2);
  cfg.absorption.refractive_index = get_number(
      obj, "absorption", "refractive_index", cfg.absorption.refractive_index);
  if (!(cfg.absorption.dipole_debye > 0.0))
    fail("absorption.dipole_debye", "must be positive");
  if (!(cfg.absorption.density_over_absorption_m2 > 0.0))
    fail("absorption.density_over_absorption_m2", "must be positive");
  if (!(cfg.absorption.refractive_index > 0.0))
    fail("absorption.refractive_index", "must be positive");
}

void parse_sweep(const Json& obj, Config& cfg) {
  reject_unknown(obj, "sweep",
                 {"chirp_a_ps2", "theta0_over_pi", "delta0_values_ps_inv",
                  "delta_ps_inv", "omega_ps_inv"});
  if (obj.contains("chirp_a_ps2"))
    cfg.sweep.chirp_a_ps2 =
        parse_axis(obj["chirp_a_ps2"], "sweep.chirp_a_ps2",
                   cfg.sweep.chirp_a_ps2);
  if (obj.contains("theta0_over_pi"))
    cfg.sweep.theta0_over_pi = parse_axis(
        obj["theta0_over_pi"], "sweep.theta0_over_pi", cfg.sweep.theta0_over_pi);
  if (obj.contains("delta0_values_ps_inv")) {
    const Json& arr = obj["delta0_values_ps_inv"];
    if (!arr.is_array() || arr.empty())
      fail("sweep.delta0_values_ps_inv", "expected a nonempty list");
    cfg.sweep.delta0_values_ps_inv.clear();
    for (const auto& v : arr)
      cfg.sweep.delta0_values_ps_inv.push_back(v.get<double>());
  }
  if (obj.contains("delta_ps_inv"))
    cfg.sweep.delta_ps_inv =
        parse_axis(obj["delta_ps_inv"], "sweep.delta_ps_inv",
                   cfg.sweep.delta_ps_inv);
  if (obj.contains("omega_ps_inv"))
    cfg.sweep.omega_ps_inv =
        parse_axis(obj["omega_ps_inv"], "sweep.omega_ps_inv",
                   cfg.sweep.omega_ps_inv);
}

void parse_oracle(const Json& obj, Config& cfg) {
  reject_unknown(obj, "oracle", {"n_trajectories"});
  cfg.oracle.n_trajectories = get_integer(obj, "oracle", "n_trajectories",
                                          cfg.oracle.n_trajectories);
  if (cfg.oracle.n_trajectories < 1)
    fail("oracle.n_trajectories", "must be >= 1");
}

void parse_output(const Json& obj, Config& cfg) {
  reject_unknown(obj, "output", {"directory"});
  if (obj.contains("directory"))
    cfg.output.directory = obj["directory"].get<std::string>();
}

}  // namespace

std::vector<double> AxisSpec::expand() const {
  if (!values.empty()) return values;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = n == 1 ? min : min + (max - min) * i / (n - 1);
  return out;
}

Config::Config() { qdt_evolve_options_init(&evolution); }

Config default_config() { return Config{}; }

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");

  Config cfg;
  reject_unknown(doc, "",
                 {"pulse", "bath", "evolution", "counting", "engine", "cw",
                  "absorption", "sweep", "oracle", "output", "seed",
                  "workers"});
  if (doc.contains("pulse")) parse_pulse(doc["pulse"], cfg);
  if (doc.contains("bath")) parse_bath_into(doc["bath"], "bath", cfg.bath);
  if (doc.contains("evolution")) parse_evolution(doc["evolution"], cfg);
  if (doc.contains("counting")) parse_counting(doc["counting"], cfg);
  if (doc.contains("engine")) parse_engine(doc["engine"], cfg);
  if (doc.contains("cw")) parse_cw(doc["cw"], cfg);
  if (doc.contains("absorption")) parse_absorption(doc["absorption"], cfg);
  if (doc.contains("sweep")) parse_sweep(doc["sweep"], cfg);
  if (doc.contains("oracle")) parse_oracle(doc["oracle"], cfg);
  if (doc.contains("output")) parse_output(doc["output"], cfg);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0)
      throw ConfigError("config key 'seed': expected a nonnegative integer");
    cfg.seed = doc["seed"].get<uint64_t>();
  }
  if (doc.contains("workers"))
    cfg.workers = static_cast<int>(get_integer(doc, "", "workers", 0));
  return cfg;
}

Json Config::resolved() const {
  Json j;
  j["pulse"] = {{"shape", "chirped_gaussian"},
                {"tau0_ps", pulse.tau0_ps},
                {"theta0_over_pi", pulse.theta0_rad / kPi},
                {"chirp_a_ps2", pulse.chirp_a_ps2},
                {"delta0_ps_inv", pulse.delta0_ps_inv},
                {"t_center_ps", pulse.t_center_ps}};
  const auto form_name = [](int f) {
    return f == QDT_SPECTRAL_EXPONENTIAL_CUTOFF
               ? "super_ohmic_exponential_cutoff"
               : "super_ohmic_gaussian_cutoff";
  };
  j["bath"] = {{"form", form_name(bath.form)},
               {"amplitude_ps2", bath.amplitude_ps2},
               {"omega_c_ps_inv", bath.cutoff_ps_inv},
               {"temperature_K", bath.temperature_K}};
  j["evolution"] = {{"rel_tol", evolution.rel_tol},
                    {"abs_tol", evolution.abs_tol},
                    {"max_step_ps", evolution.max_step_ps},
                    {"n_samples", evolution.n_samples}};
  if (!std::isnan(evolution.t_start_ps))
    j["evolution"]["t_start_ps"] = evolution.t_start_ps;
  if (!std::isnan(evolution.t_end_ps))
    j["evolution"]["t_end_ps"] = evolution.t_end_ps;
  j["counting"] = {{"n", counting.n},
                   {"du_ps", counting.du_ps},
                   {"apodize", counting.apodize},
                   {"emit_mev", counting.emit_mev}};
  if (counting.at_time_ps) j["counting"]["at_time_ps"] = *counting.at_time_ps;
  j["engine"] = {{"hot_T_K", engine.hot_T_K}, {"cold_T_K", engine.cold_T_K}};
  j["cw"] = {{"delta_ps_inv", cw.delta_ps_inv},
             {"omega_ps_inv", cw.omega_ps_inv},
             {"gamma_sp_ns_inv", cw.gamma_sp_ps_inv * 1e3},
             {"bath",
              {{"form", form_name(cw.bath.form)},
               {"amplitude_ps2", cw.bath.amplitude_ps2},
               {"omega_c_ps_inv", cw.bath.cutoff_ps_inv},
               {"temperature_K", cw.bath.temperature_K}}}};
  j["absorption"] = {
      {"dipole_debye", absorption.dipole_debye},
      {"density_over_absorption_m2", absorption.density_over_absorption_m2},
      {"refractive_index", absorption.refractive_index}};
  const auto axis_json = [](const AxisSpec& a) {
    if (!a.values.empty()) return Json(a.values);
    return Json{{"min", a.min}, {"max", a.max}, {"n", a.n}};
  };
  j["sweep"] = {{"chirp_a_ps2", axis_json(sweep.chirp_a_ps2)},
                {"theta0_over_pi", axis_json(sweep.theta0_over_pi)},
                {"delta0_values_ps_inv", sweep.delta0_values_ps_inv},
                {"delta_ps_inv", axis_json(sweep.delta_ps_inv)},
                {"omega_ps_inv", axis_json(sweep.omega_ps_inv)}};
  j["oracle"] = {{"n_trajectories", oracle.n_trajectories}};
  j["output"] = {{"directory", output.directory}};
  j["seed"] = seed;
  j["workers"] = workers;
  return j;
}

}  // namespace qdtcli
