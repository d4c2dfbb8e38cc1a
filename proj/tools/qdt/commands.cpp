/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "csvio.hpp"
#include "qdt/parallel.hpp"
#include "qdt/qdt.h"

namespace qdtcli {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHbarMevPs = 0.6582119565476076;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void ensure_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
}

[[noreturn]] void die(const std::string& what) {
  throw std::runtime_error(what + ": " + qdt_last_error());
}

void check(qdt_status status, const std::string& what) {
  if (status != QDT_OK) die(what);
}

void pulse_comments(CsvWriter& csv, const qdt_pulse_params& p) {
  csv.comment("pulse.tau0_ps", p.tau0_ps);
  csv.comment("pulse.theta0_over_pi", p.theta0_rad / kPi);
  csv.comment("pulse.chirp_a_ps2", p.chirp_a_ps2);
  csv.comment("pulse.delta0_ps_inv", p.delta0_ps_inv);
  csv.comment("pulse.t_center_ps", p.t_center_ps);
}

void bath_comments(CsvWriter& csv, const qdt_bath_params& b) {
  csv.comment("bath.form",
              b.form == QDT_SPECTRAL_EXPONENTIAL_CUTOFF
                  ? "super_ohmic_exponential_cutoff"
                  : "super_ohmic_gaussian_cutoff");
  csv.comment("bath.amplitude_ps2", b.amplitude_ps2);
  csv.comment("bath.omega_c_ps_inv", b.cutoff_ps_inv);
  csv.comment("bath.temperature_K", b.temperature_K);
}

void write_gnuplot(const std::string& dir, const std::string& name,
                   const std::string& body) {
  std::ofstream out(dir + "/plot_" + name + ".gp", std::ios::binary);
  out << "# gnuplot script for the " << name << " output\n" << body;
}

std::string delta_tag(double delta) {
  std::string tag = format_double(delta);
  for (char& c : tag) {
    if (c == '-') c = 'm';
    if (c == '.') c = 'p';
  }
  return tag;
}

struct SweepPoint {
  double value = 0.0;
  bool missing = false;
  bool failed = false;
  std::string error;
};

// Evaluates fn over the (a, theta) grid with the worker pool; results keep
// deterministic grid order.
template <class Fn>
std::vector<SweepPoint> run_grid(const std::vector<double>& a_values,
                                 const std::vector<double>& theta_values,
                                 int workers, Fn&& fn) {
  const long total =
      static_cast<long>(a_values.size()) * theta_values.size();
  std::vector<SweepPoint> points(total);
  qdt::parallel_chunks(total, 4, workers, [&](long begin, long end) {
    for (long idx = begin; idx < end; ++idx) {
      const std::size_t i = idx / theta_values.size();
      const std::size_t j = idx % theta_values.size();
      fn(points[idx], a_values[i], theta_values[j]);
    }
  });
  return points;
}

int finish_sweep(const std::vector<SweepPoint>& points) {
  long failures = 0;
  for (const SweepPoint& p : points)
    if (p.failed) {
      ++failures;
      std::cerr << "point failed: " << p.error << "\n";
    }
  if (failures) {
    std::cerr << failures << " sweep point(s) failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int cmd_pulse_preview(const RunContext& ctx) {
  Stopwatch watch;
  ensure_dir(ctx.out_dir);
  const qdt_pulse_params& p = ctx.config.pulse;

  double tau = 0;
  check(qdt_pulse_derived(&p, &tau, nullptr, nullptr), "pulse-preview");
  double t0 = ctx.config.evolution.t_start_ps;
  double t1 = ctx.config.evolution.t_end_ps;
  if (std::isnan(t0)) t0 = p.t_center_ps - 6.0 * tau;
  if (std::isnan(t1)) t1 = p.t_center_ps + 6.0 * tau;
  const int n = ctx.config.evolution.n_samples;

  const std::string path = ctx.out_dir + "/pulse_preview.csv";
  CsvWriter csv(path,
                {"t_ps", "omega_ps_inv", "delta_ps_inv", "lambda_ps_inv"});
  pulse_comments(csv, p);
  for (int i = 0; i < n; ++i) {
    const double t = t0 + (t1 - t0) * i / (n - 1);
    double omega = 0, delta = 0, lambda = 0;
    check(qdt_pulse_sample(&p, t, &omega, &delta, &lambda), "pulse-preview");
    csv.row({t, omega, delta, lambda});
  }
  csv.close();

  if (ctx.gnuplot_stub)
    write_gnuplot(ctx.out_dir, "pulse_preview",
                  "set datafile separator ','\n"
                  "set xlabel 't (ps)'\n"
                  "plot 'pulse_preview.csv' u 1:2 w l t 'Omega', \\\n"
                  "     '' u 1:($4/2) w l t '+Lambda/2', \\\n"
                  "     '' u 1:(-$4/2) w l t '-Lambda/2'\n");
  write_manifest(ctx.out_dir, "pulse-preview", ctx.config.resolved(), {path},
                 watch.seconds());
  return 0;
}

int cmd_evolve(const RunContext& ctx) {
  Stopwatch watch;
  ensure_dir(ctx.out_dir);
  qdt_trajectory* traj = nullptr;
  check(qdt_evolve(&ctx.config.pulse, &ctx.config.bath, &ctx.config.evolution,
                   &traj),
        "evolve");

  const int ncols = qdt_trajectory_ncols();
  std::vector<std::string> columns;
  for (int c = 0; c < ncols; ++c) columns.push_back(qdt_trajectory_column_name(c));
  const std::string path = ctx.out_dir + "/trajectory.csv";
  CsvWriter csv(path, columns);
  pulse_comments(csv, ctx.config.pulse);
  bath_comments(csv, ctx.config.bath);
  csv.comment("heat_sign_convention", "phonons_to_dot_positive");
  std::vector<double> row(ncols);
  for (int i = 0; i < qdt_trajectory_size(traj); ++i) {
    check(qdt_trajectory_row(traj, i, row.data(), row.size()), "evolve row");
    csv.row(row);
  }
  csv.close();
  qdt_trajectory_free(traj);

  if (ctx.gnuplot_stub)
    write_gnuplot(ctx.out_dir, "trajectory",
                  "set datafile separator ','\n"
                  "set xlabel 't (ps)'\n"
                  "plot 'trajectory.csv' u 1:5 w l t 'p1', \\\n"
                  "     '' u 1:14 w l t 'cumulative heat'\n");
  write_manifest(ctx.out_dir, "evolve", ctx.config.resolved(), {path},
                 watch.seconds());
  return 0;
}

namespace {

int sweep_command(const RunContext& ctx, bool efficiency) {
  Stopwatch watch;
  ensure_dir(ctx.out_dir);
  const std::vector<double> a_values = ctx.config.sweep.chirp_a_ps2.expand();
  const std::vector<double> theta_values =
      ctx.config.sweep.theta0_over_pi.expand();

  int exit_code = 0;
  std::vector<std::string> outputs;
  for (double delta : ctx.config.sweep.delta0_values_ps_inv) {
    const auto points = run_grid(
        a_values, theta_values, ctx.config.workers,
        [&](SweepPoint& out, double a, double theta_over_pi) {
          qdt_pulse_params p = ctx.config.pulse;
          p.chirp_a_ps2 = a;
          p.theta0_rad = theta_over_pi * kPi;
          p.delta0_ps_inv = delta;
          qdt_trajectory* traj = nullptr;
          qdt_status st =
              qdt_evolve(&p, &ctx.config.bath, &ctx.config.evolution, &traj);
          if (st != QDT_OK) {
            out.failed = true;
            out.error = qdt_last_error();
            return;
          }
          if (efficiency) {
            double ratio = 0;
            st = qdt_trajectory_engine_efficiency(
                traj, ctx.config.engine.hot_T_K, ctx.config.engine.cold_T_K,
                nullptr, &ratio);
            if (st == QDT_ERR_NOT_HEAT_ABSORBING) {
              out.missing = true;
            } else if (st != QDT_OK) {
              out.failed = true;
              out.error = qdt_last_error();
            } else {
              out.value = ratio;
            }
          } else {
            st = qdt_trajectory_integrated_heat(traj, &out.value);
            if (st != QDT_OK) {
              out.failed = true;
              out.error = qdt_last_error();
            }
          }
          qdt_trajectory_free(traj);
        });

    const std::string name = efficiency ? "efficiency_sweep" : "heat_sweep";
    const std::string path =
        ctx.out_dir + "/" + name + "_delta_" + delta_tag(delta) + ".csv";
    CsvWriter csv(path, {"chirp_a_ps2", "theta0_over_pi",
                         efficiency ? "eta_over_carnot" : "mean_heat_ps_inv"});
    pulse_comments(csv, ctx.config.pulse);
    bath_comments(csv, ctx.config.bath);
    csv.comment("delta0_ps_inv", delta);
    if (efficiency) {
      csv.comment("engine.hot_T_K", ctx.config.engine.hot_T_K);
      csv.comment("engine.cold_T_K", ctx.config.engine.cold_T_K);
    } else {
      csv.comment("heat_sign_convention", "phonons_to_dot_positive");
    }
    for (std::size_t i = 0; i < a_values.size(); ++i)
      for (std::size_t j = 0; j < theta_values.size(); ++j) {
        const SweepPoint& pt = points[i * theta_values.size() + j];
        if (pt.missing || pt.failed)
          csv.row_raw({format_double(a_values[i]),
                       format_double(theta_values[j]), "nan"});
        else
          csv.row({a_values[i], theta_values[j], pt.value});
      }
    csv.close();
    outputs.push_back(path);
    exit_code = std::max(exit_code, finish_sweep(points));

    if (ctx.gnuplot_stub)
      write_gnuplot(ctx.out_dir, name + "_delta_" + delta_tag(delta),
                    "set datafile separator ','\n"
                    "set xlabel 'chirp a (ps^2)'\nset ylabel 'theta0/pi'\n"
                    "set view map\nsplot '" +
                        path.substr(path.find_last_of('/') + 1) +
                        "' u 1:2:3 w points pt 5 ps 2 palette\n");
  }
  write_manifest(ctx.out_dir, efficiency ? "efficiency-sweep" : "heat-sweep",
                 ctx.config.resolved(), outputs, watch.seconds());
  return exit_code;
}

}  // namespace

int cmd_heat_sweep(const RunContext& ctx) { return sweep_command(ctx, false); }

int cmd_efficiency_sweep(const RunContext& ctx) {
  return sweep_command(ctx, true);
}

int cmd_ts(const RunContext& ctx) {
  Stopwatch watch;
  ensure_dir(ctx.out_dir);
  qdt_trajectory* traj = nullptr;
  check(qdt_evolve(&ctx.config.pulse, &ctx.config.bath, &ctx.config.evolution,
                   &traj),
        "ts");
  const std::string path = ctx.out_dir + "/ts.csv";
  CsvWriter csv(path, {"t_ps", "t_eff_K", "entropy_vn_kb", "entropy_diag_kb"});
  pulse_comments(csv, ctx.config.pulse);
  bath_comments(csv, ctx.config.bath);
  std::vector<double> row(qdt_trajectory_ncols());
  for (int i = 0; i < qdt_trajectory_size(traj); ++i) {
    check(qdt_trajectory_row(traj, i, row.data(), row.size()), "ts row");
    const double pp = row[5], pm = row[6];
    const double sp = pp > 0 ? -pp * std::log(pp) : 0.0;
    const double sm = pm > 0 ? -pm * std::log(pm) : 0.0;
    csv.row({row[0], row[15], row[14], sp + sm});
  }
  csv.close();
  qdt_trajectory_free(traj);

  if (ctx.gnuplot_stub)
    write_gnuplot(ctx.out_dir, "ts",
                  "set datafile separator ','\n"
                  "set xlabel 'entropy (k_B)'\nset ylabel 'T_eff (K)'\n"
                  "plot 'ts.csv' u 3:2 w l t 'trajectory'\n");
  write_manifest(ctx.out_dir, "ts", ctx.config.resolved(), {path},
                 watch.seconds());
  return 0;
}

int cmd_heat_distribution(const RunContext& ctx) {
  Stopwatch watch;
  ensure_dir(ctx.out_dir);
  qdt_counting_grid grid;
  grid.du_ps = ctx.config.counting.du_ps;
  grid.n = ctx.config.counting.n;
  grid.apodize = ctx.config.counting.apodize ? 1 : 0;
  grid.workers = ctx.config.workers;
  const double t_stop = ctx.config.counting.at_time_ps
                            ? *ctx.config.counting.at_time_ps
                            : std::nan("");

  qdt_distribution* dist = nullptr;
  check(qdt_heat_distribution(&ctx.config.pulse, &ctx.config.bath,
                              &ctx.config.evolution, &grid, t_stop, &dist),
        "heat-distribution");

  double du = 0, dq = 0;
  int n = 0, aliasing = 0;
  qdt_distribution_grid(dist, &du, &dq, &n, &aliasing);

  const std::string path = ctx.out_dir + "/heat_distribution.csv";
  std::vector<std::string> columns{"q_ps_inv", "probability_density"};
  if (ctx.config.counting.emit_mev) columns.push_back("q_meV");
  CsvWriter csv(path, columns);
  pulse_comments(csv, ctx.config.pulse);
  bath_comments(csv, ctx.config.bath);
  csv.comment("sign_convention", "phonons_to_dot_positive");
  csv.comment("du_ps", du);
  csv.comment("dq_ps_inv", dq);
  csv.comment("n", static_cast<double>(n));
  if (ctx.config.counting.at_time_ps)
    csv.comment("at_time_ps", *ctx.config.counting.at_time_ps);
  double mean = 0, var = 0;
  qdt_distribution_moments(dist, &mean, &var);
  csv.comment("mean_ps_inv", mean);
  csv.comment("variance_ps_inv2", var);
  for (int i = 0; i < qdt_distribution_size(dist); ++i) {
    double q = 0, d = 0;
    check(qdt_distribution_point(dist, i, &q, &d), "distribution point");
    if (ctx.config.counting.emit_mev)
      csv.row({q, d, q * kHbarMevPs});
    else
      csv.row({q, d});
  }
  csv.close();
  qdt_distribution_free(dist);
  if (aliasing)
    std::cerr << "warning: edge mass suggests the heat axis clipped the "
                 "distribution\n";

  if (ctx.gnuplot_stub)
    write_gnuplot(ctx.out_dir, "heat_distribution",
                  "set datafile separator ','\n"
                  "set xlabel 'Q (ps^-1)'\nset ylabel 'P(Q)'\n"
                  "plot 'heat_distribution.csv' u 1:2 w l t 'P(Q)'\n");
  write_manifest(ctx.out_dir, "heat-distribution", ctx.config.resolved(),
                 {path}, watch.seconds());
  return 0;
}

int cmd_cooling_map(const RunContext& ctx) {
  Stopwatch watch;
  ensure_dir(ctx.out_dir);
  const AxisSpec& da = ctx.config.sweep.delta_ps_inv;
  const AxisSpec& wa = ctx.config.sweep.omega_ps_inv;
  const std::vector<double> deltas = da.expand();
  const std::vector<double> omegas = wa.expand();

  qdt_cooling_map* map = nullptr;
  check(qdt_cooling_map_run(&ctx.config.cw, &ctx.config.absorption,
                            deltas.front(), deltas.back(),
                            static_cast<int>(deltas.size()), omegas.front(),
                            omegas.back(), static_cast<int>(omegas.size()),
                            ctx.config.workers, &map),
        "cooling-map");

  const std::string path = ctx.out_dir + "/cooling_map.csv";
  CsvWriter csv(path, {"delta_ps_inv", "omega_ps_inv", "cooling_W",
                       "heating_W", "net_W"});
  bath_comments(csv, ctx.config.cw.bath);
  csv.comment("gamma_sp_ns_inv", ctx.config.cw.gamma_sp_ps_inv * 1e3);
  csv.comment("dipole_debye", ctx.config.absorption.dipole_debye);
  csv.comment("density_over_absorption_m2",
              ctx.config.absorption.density_over_absorption_m2);
  csv.comment("refractive_index", ctx.config.absorption.refractive_index);
  double row[5];
  int net = 0;
  long net_count = 0;
  for (int i = 0; i < qdt_cooling_map_size(map); ++i) {
    check(qdt_cooling_map_row(map, i, row, &net), "cooling-map row");
    net_count += net;
    csv.row({row[0], row[1], row[2], row[3], row[4]});
  }
  csv.close();
  qdt_cooling_map_free(map);
  std::cout << "net-cooling points: " << net_count << " / "
            << deltas.size() * omegas.size() << "\n";

  if (ctx.gnuplot_stub)
    write_gnuplot(ctx.out_dir, "cooling_map",
                  "set datafile separator ','\n"
                  "set xlabel 'Delta (ps^-1)'\nset ylabel 'Omega (ps^-1)'\n"
                  "set view map\nsplot 'cooling_map.csv' u 1:2:5 w points "
                  "pt 5 ps 2 palette t 'net W'\n");
  write_manifest(ctx.out_dir, "cooling-map", ctx.config.resolved(), {path},
                 watch.seconds());
  return 0;
}

int cmd_oracle_mc(const RunContext& ctx) {
  Stopwatch watch;
  ensure_dir(ctx.out_dir);

  // Match the counting-grid heat axis so the histogram mirrors the
  // reconstructed distribution.
  qdt_counting_grid grid;
  grid.du_ps = ctx.config.counting.du_ps;
  grid.n = ctx.config.counting.n;
  grid.apodize = 0;
  grid.workers = ctx.config.workers;
  qdt_distribution* dist = nullptr;
  check(qdt_heat_distribution(&ctx.config.pulse, &ctx.config.bath,
                              &ctx.config.evolution, &grid, std::nan(""),
                              &dist),
        "oracle-mc grid");
  double dq = 0;
  int nbins = 0;
  qdt_distribution_grid(dist, nullptr, &dq, &nbins, nullptr);
  qdt_distribution_free(dist);

  qdt_mc_options mo{0.0, 0.0, ctx.config.workers};
  qdt_mc_stats* stats = nullptr;
  check(qdt_mc_sample(&ctx.config.pulse, &ctx.config.bath,
                      &ctx.config.evolution, ctx.config.oracle.n_trajectories,
                      ctx.config.seed, dq, nbins, &mo, &stats),
        "oracle-mc");

  const std::string hist_path = ctx.out_dir + "/mc_histogram.csv";
  CsvWriter csv(hist_path, {"q_ps_inv", "probability_density"});
  pulse_comments(csv, ctx.config.pulse);
  bath_comments(csv, ctx.config.bath);
  csv.comment("sign_convention", "phonons_to_dot_positive");
  csv.comment("seed", static_cast<double>(ctx.config.seed));
  for (int i = 0; i < qdt_mc_nbins(stats); ++i) {
    double q = 0, mass = 0;
    check(qdt_mc_bin(stats, i, &q, &mass), "mc bin");
    csv.row({q, mass / dq});
  }
  csv.close();

  double mean = 0, se = 0, jumps = 0;
  qdt_mc_mean_heat(stats, &mean, &se);
  qdt_mc_mean_jumps(stats, &jumps);
  Json stats_json;
  stats_json["mean_heat_ps_inv"] = mean;
  stats_json["stderr_heat_ps_inv"] = se;
  stats_json["mean_jumps"] = jumps;
  stats_json["n_trajectories"] = ctx.config.oracle.n_trajectories;
  stats_json["seed"] = ctx.config.seed;
  const std::string stats_path = ctx.out_dir + "/mc_stats.json";
  std::ofstream out(stats_path, std::ios::binary);
  out << stats_json.dump(2) << "\n";
  out.close();
  qdt_mc_stats_free(stats);

  write_manifest(ctx.out_dir, "oracle-mc", ctx.config.resolved(),
                 {hist_path, stats_path}, watch.seconds());
  return 0;
}

}  // namespace qdtcli
