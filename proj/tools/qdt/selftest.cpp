/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "qdt/qdt.h"

namespace qdtcli {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
  std::string name;
  bool pass;
};

}  // namespace

// Runs library invariants end to end through the C surface and prints one
// line per check.
int cmd_selftest(int workers) {
  std::vector<Check> checks;
  const auto record = [&](const std::string& name, bool pass) {
    checks.push_back({name, pass});
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << "\n";
  };

  qdt_bath_params bath;
  qdt_bath_params_init_exciton(&bath);

  // Detailed balance of the phonon rates.
  {
    bool ok = true;
    for (double delta : {-3.0, 0.0, 2.0})
      for (double omega : {0.5, 1.5, 3.0}) {
        double ga = 0, ge = 0;
        ok = ok && qdt_bath_rates(&bath, delta, omega, &ga, &ge) == QDT_OK;
        const double lambda = std::hypot(delta, omega);
        const double boltz = std::exp(-lambda / qdt_kelvin_to_rate(20.0));
        ok = ok && std::abs(ga / ge - boltz) < 1e-12 * boltz;
      }
    record("detailed balance gamma_a/gamma_e = exp(-Lambda/kT)", ok);
  }

  const qdt_pulse_params pulse{1.0, 6.0 * kPi, 8.0, 0.0, 0.0};

  // Trace, positivity and heat bookkeeping along a trajectory.
  {
    qdt_trajectory* traj = nullptr;
    bool ok = qdt_evolve(&pulse, &bath, nullptr, &traj) == QDT_OK;
    if (ok) {
      std::vector<double> row(qdt_trajectory_ncols());
      for (int i = 0; ok && i < qdt_trajectory_size(traj); ++i) {
        ok = qdt_trajectory_row(traj, i, row.data(), row.size()) == QDT_OK;
        const double trace = row[1] + row[4];
        const double coh2 = row[2] * row[2] + row[3] * row[3];
        const double det = row[1] * row[4] - coh2;
        const double min_eig =
            0.5 * (trace - std::sqrt(std::max(0.0, trace * trace - 4 * det)));
        ok = ok && std::abs(trace - 1.0) < 1e-9 && min_eig > -1e-9;
      }
      double sigma = 0;
      ok = ok &&
           qdt_trajectory_entropy_production(traj, 20.0, &sigma) == QDT_OK &&
           sigma > -1e-6;
    }
    qdt_trajectory_free(traj);
    record("trajectory keeps trace, positivity and the second law", ok);
  }

  // Characteristic function normalisation.
  {
    double re = 0, im = 0;
    bool ok = qdt_counting_g(&pulse, &bath, nullptr, 0.0, &re, &im) == QDT_OK;
    ok = ok && std::abs(re - 1.0) < 1e-9 && std::abs(im) < 1e-9;
    double re_p = 0, im_p = 0, re_m = 0, im_m = 0;
    ok = ok &&
         qdt_counting_g(&pulse, &bath, nullptr, 0.8, &re_p, &im_p) == QDT_OK &&
         qdt_counting_g(&pulse, &bath, nullptr, -0.8, &re_m, &im_m) == QDT_OK;
    ok = ok && std::abs(re_p - re_m) < 1e-8 && std::abs(im_p + im_m) < 1e-8;
    ok = ok && re_p * re_p + im_p * im_p <= 1.0 + 1e-9;
    record("characteristic function: G(0)=1, G(-u)=conj(G(u)), |G|<=1", ok);
  }

  // Distribution mean equals the trajectory heat.
  {
    qdt_counting_grid grid{0.0, 256, 0, workers};
    qdt_distribution* dist = nullptr;
    bool ok = qdt_heat_distribution(&pulse, &bath, nullptr, &grid,
                                    std::nan(""), &dist) == QDT_OK;
    double mean = 0;
    if (ok) ok = qdt_distribution_moments(dist, &mean, nullptr) == QDT_OK;
    qdt_trajectory* traj = nullptr;
    double q = 0;
    ok = ok && qdt_evolve(&pulse, &bath, nullptr, &traj) == QDT_OK &&
         qdt_trajectory_integrated_heat(traj, &q) == QDT_OK;
    ok = ok && std::abs(mean - q) < 1e-3 * std::max(1.0, std::abs(q));
    qdt_trajectory_free(traj);
    qdt_distribution_free(dist);
    record("distribution mean matches the integrated heat current", ok);
  }

  // Monte Carlo determinism.
  {
    qdt_mc_options mo{0.0, 0.0, workers};
    qdt_mc_stats* a = nullptr;
    qdt_mc_stats* b = nullptr;
    bool ok =
        qdt_mc_sample(&pulse, &bath, nullptr, 300, 9, 0.2, 128, &mo, &a) ==
            QDT_OK &&
        qdt_mc_sample(&pulse, &bath, nullptr, 300, 9, 0.2, 128, &mo, &b) ==
            QDT_OK;
    double mean_a = 0, mean_b = 0;
    if (ok) {
      qdt_mc_mean_heat(a, &mean_a, nullptr);
      qdt_mc_mean_heat(b, &mean_b, nullptr);
      ok = mean_a == mean_b;
    }
    qdt_mc_stats_free(a);
    qdt_mc_stats_free(b);
    record("jump unraveling is deterministic for a fixed seed", ok);
  }

  // Steady-state residual and the zero-current law.
  {
    qdt_cw_params cw;
    cw.delta_ps_inv = 2.0;
    cw.omega_ps_inv = 0.8;
    qdt_bath_params_init_siv(&cw.bath);
    cw.gamma_sp_ps_inv = 1e-3;
    double rho[8], residual = 0;
    bool ok = qdt_steady_state(&cw, rho, &residual) == QDT_OK;
    ok = ok && residual < 1e-10;
    cw.gamma_sp_ps_inv = 0.0;
    double power = 0;
    ok = ok && qdt_cooling_power(&cw, &power, nullptr) == QDT_OK;
    ok = ok && std::abs(power) < 1e-12;
    record("steady state: residual < 1e-10; no current without decay", ok);
  }

  int failures = 0;
  for (const Check& c : checks) failures += c.pass ? 0 : 1;
  std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << " ("
            << checks.size() - failures << "/" << checks.size() << ")\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace qdtcli
