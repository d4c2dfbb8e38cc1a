/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "qdt/qdt.h"

namespace {

qdt_pulse_params chirped_pulse() {
  return {0.5, 9.0 * 3.14159265358979323846, 10.0, 0.0, 0.0};
}

qdt_bath_params exciton_bath() {
  qdt_bath_params b;
  qdt_bath_params_init_exciton(&b);
  return b;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(qdt_version()) > 0);
  CHECK(std::string(qdt_status_name(QDT_OK)) == "ok");
  CHECK(std::strlen(qdt_status_name(QDT_ERR_INTEGRATION)) > 0);
}

TEST_CASE("unit conversion") {
  CHECK(qdt_kelvin_to_rate(20.0) == doctest::Approx(2.6184).epsilon(1e-4));
  CHECK(qdt_rate_to_kelvin(qdt_kelvin_to_rate(3.7)) ==
        doctest::Approx(3.7).epsilon(1e-14));
}

TEST_CASE("pulse surface") {
  const qdt_pulse_params p = chirped_pulse();
  double tau = 0, alpha = 0, peak = 0;
  REQUIRE(qdt_pulse_derived(&p, &tau, &alpha, &peak) == QDT_OK);
  CHECK(tau == doctest::Approx(20.006249).epsilon(1e-6));
  CHECK(alpha == doctest::Approx(0.09993754).epsilon(1e-6));

  double omega = 0, delta = 0, lambda = 0;
  REQUIRE(qdt_pulse_sample(&p, 0.0, &omega, &delta, &lambda) == QDT_OK);
  CHECK(omega == doctest::Approx(peak).epsilon(1e-12));
  CHECK(delta == doctest::Approx(0.0));
  CHECK(lambda == doctest::Approx(peak).epsilon(1e-12));

  SUBCASE("invalid pulses are reported") {
    qdt_pulse_params bad = p;
    bad.tau0_ps = -1.0;
    CHECK(qdt_pulse_derived(&bad, &tau, &alpha, &peak) ==
          QDT_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(qdt_last_error()) > 0);
    CHECK(qdt_pulse_derived(nullptr, &tau, &alpha, &peak) ==
          QDT_ERR_INVALID_ARGUMENT);
  }
}

TEST_CASE("bath surface") {
  const qdt_bath_params b = exciton_bath();
  double j = 0;
  REQUIRE(qdt_bath_spectral_density(&b, 1.0, &j) == QDT_OK);
  CHECK(j == doctest::Approx(0.0219600588).epsilon(1e-8));
  double n = 0;
  REQUIRE(qdt_bath_bose_occupation(&b, 1.0, &n) == QDT_OK);
  CHECK(n == doctest::Approx(2.1501556538).epsilon(1e-8));
  double ga = 0, ge = 0;
  REQUIRE(qdt_bath_rates(&b, 0.0, 1.0, &ga, &ge) == QDT_OK);
  CHECK(ga == doctest::Approx(0.074169146).epsilon(1e-7));
  CHECK(ge == doctest::Approx(0.108663925).epsilon(1e-7));
  // Detailed balance through the C surface.
  CHECK(ga / ge ==
        doctest::Approx(std::exp(-1.0 / qdt_kelvin_to_rate(20.0)))
            .epsilon(1e-12));
}

TEST_CASE("trajectory surface") {
  const qdt_pulse_params p = chirped_pulse();
  const qdt_bath_params b = exciton_bath();
  qdt_evolve_options opt;
  qdt_evolve_options_init(&opt);
  opt.n_samples = 201;

  qdt_trajectory* traj = nullptr;
  REQUIRE(qdt_evolve(&p, &b, &opt, &traj) == QDT_OK);
  REQUIRE(traj != nullptr);
  CHECK(qdt_trajectory_size(traj) == 201);
  REQUIRE(qdt_trajectory_ncols() == 16);
  CHECK(std::string(qdt_trajectory_column_name(0)) == "t_ps");
  CHECK(std::string(qdt_trajectory_column_name(15)) == "t_eff_K");
  CHECK(qdt_trajectory_column_name(16) == nullptr);

  std::vector<double> row(qdt_trajectory_ncols());
  double prev_t = -1e300;
  for (int i = 0; i < qdt_trajectory_size(traj); ++i) {
    REQUIRE(qdt_trajectory_row(traj, i, row.data(), row.size()) == QDT_OK);
    CHECK(row[0] > prev_t);
    prev_t = row[0];
    // Trace of the stored state.
    CHECK(row[1] + row[4] == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(qdt_trajectory_row(traj, 999, row.data(), row.size()) ==
        QDT_ERR_INVALID_ARGUMENT);
  CHECK(qdt_trajectory_row(traj, 0, row.data(), 3) ==
        QDT_ERR_INVALID_ARGUMENT);

  double q = 0;
  REQUIRE(qdt_trajectory_integrated_heat(traj, &q) == QDT_OK);
  CHECK(q == doctest::Approx(row[13]).epsilon(1e-12));  // last cumulative
  CHECK(q > 0.0);  // positive chirp absorbs

  double ds = 0, sigma = 0;
  REQUIRE(qdt_trajectory_entropy_change(traj, &ds) == QDT_OK);
  REQUIRE(qdt_trajectory_entropy_production(traj, 20.0, &sigma) == QDT_OK);
  CHECK(sigma == doctest::Approx(ds - q / qdt_kelvin_to_rate(20.0))
                     .epsilon(1e-12));
  CHECK(sigma > -1e-6);

  double eta = 0, ratio = 0;
  REQUIRE(qdt_trajectory_engine_efficiency(traj, 20.0, 2.7, &eta, &ratio) ==
          QDT_OK);
  CHECK(eta > 0.0);
  CHECK(ratio < 1.0 + 1e-9);

  qdt_trajectory_free(traj);
}

TEST_CASE("counting and distribution surface") {
  qdt_pulse_params p = chirped_pulse();
  p.tau0_ps = 1.0;
  p.theta0_rad = 4.0 * 3.14159265358979323846;
  p.chirp_a_ps2 = 5.0;
  const qdt_bath_params b = exciton_bath();

  double g_re = 0, g_im = 0;
  REQUIRE(qdt_counting_g(&p, &b, nullptr, 0.0, &g_re, &g_im) == QDT_OK);
  CHECK(g_re == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(g_im) < 1e-9);

  qdt_counting_grid grid{0.0, 256, 0, 0};
  qdt_distribution* dist = nullptr;
  REQUIRE(qdt_heat_distribution(&p, &b, nullptr, &grid, std::nan(""), &dist) ==
          QDT_OK);
  REQUIRE(dist != nullptr);
  CHECK(qdt_distribution_size(dist) == 256);

  double mass = 0.0;
  for (int i = 0; i < qdt_distribution_size(dist); ++i) {
    double qv = 0, dv = 0;
    REQUIRE(qdt_distribution_point(dist, i, &qv, &dv) == QDT_OK);
    double dq = 0;
    qdt_distribution_grid(dist, nullptr, &dq, nullptr, nullptr);
    mass += dv * dq;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));

  double mean = 0, var = 0;
  REQUIRE(qdt_distribution_moments(dist, &mean, &var) == QDT_OK);
  double q_traj = 0;
  qdt_trajectory* traj = nullptr;
  REQUIRE(qdt_evolve(&p, &b, nullptr, &traj) == QDT_OK);
  qdt_trajectory_integrated_heat(traj, &q_traj);
  CHECK(mean == doctest::Approx(q_traj).epsilon(1e-3));
  qdt_trajectory_free(traj);

  double below = 0;
  REQUIRE(qdt_distribution_mass_below(dist, 0.0, &below) == QDT_OK);
  CHECK(below >= 0.0);
  qdt_distribution_free(dist);
}

TEST_CASE("monte carlo surface") {
  qdt_pulse_params p = chirped_pulse();
  p.tau0_ps = 1.0;
  p.theta0_rad = 4.0 * 3.14159265358979323846;
  p.chirp_a_ps2 = 5.0;
  const qdt_bath_params b = exciton_bath();

  qdt_mc_stats* stats = nullptr;
  REQUIRE(qdt_mc_sample(&p, &b, nullptr, 500, 42, 0.15, 256, nullptr,
                        &stats) == QDT_OK);
  REQUIRE(stats != nullptr);
  double mean = 0, se = 0;
  REQUIRE(qdt_mc_mean_heat(stats, &mean, &se) == QDT_OK);
  CHECK(se > 0.0);
  CHECK(qdt_mc_nbins(stats) == 256);
  double total = 0.0;
  for (int i = 0; i < qdt_mc_nbins(stats); ++i) {
    double qc = 0, m = 0;
    REQUIRE(qdt_mc_bin(stats, i, &qc, &m) == QDT_OK);
    total += m;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  double rho[8], err[8];
  REQUIRE(qdt_mc_final_state(stats, rho, err) == QDT_OK);
  CHECK(rho[0] + rho[6] == doctest::Approx(1.0).epsilon(1e-9));  // trace
  qdt_mc_stats_free(stats);
}

TEST_CASE("steady-state surface") {
  qdt_cw_params cw;
  cw.delta_ps_inv = 2.5;
  cw.omega_ps_inv = 0.4;
  qdt_bath_params_init_siv(&cw.bath);
  cw.gamma_sp_ps_inv = 1e-3;

  double rho[8], residual = 0;
  REQUIRE(qdt_steady_state(&cw, rho, &residual) == QDT_OK);
  CHECK(residual < 1e-10);
  CHECK(rho[0] + rho[6] == doctest::Approx(1.0).epsilon(1e-12));

  double power = 0, watts = 0;
  REQUIRE(qdt_cooling_power(&cw, &power, &watts) == QDT_OK);
  CHECK(power > 0.0);  // red-detuned cooling
  CHECK(watts == doctest::Approx(power * 1.054571817e-10).epsilon(1e-12));

  SUBCASE("thermal fixed point carries no current") {
    qdt_cw_params nodecay = cw;
    nodecay.gamma_sp_ps_inv = 0.0;
    REQUIRE(qdt_cooling_power(&nodecay, &power, nullptr) == QDT_OK);
    CHECK(std::abs(power) < 1e-12);
  }

  SUBCASE("degenerate generator reports the right status") {
    qdt_cw_params dead = cw;
    dead.gamma_sp_ps_inv = 0.0;
    dead.bath.amplitude_ps2 = 0.0;
    CHECK(qdt_steady_state(&dead, rho, &residual) ==
          QDT_ERR_NO_UNIQUE_STEADY_STATE);
    CHECK(std::strlen(qdt_last_error()) > 0);
  }

  SUBCASE("absorption heating") {
    double watts1 = 0, watts2 = 0;
    REQUIRE(qdt_absorption_heating(1.0, nullptr, &watts1) == QDT_OK);
    CHECK(watts1 == doctest::Approx(1.0591439667e-12).epsilon(1e-8));
    REQUIRE(qdt_absorption_heating(2.0, nullptr, &watts2) == QDT_OK);
    CHECK(watts2 == doctest::Approx(4.0 * watts1).epsilon(1e-14));
  }

  SUBCASE("cooling map") {
    qdt_cooling_map* map = nullptr;
    REQUIRE(qdt_cooling_map_run(&cw, nullptr, -3.0, 3.0, 5, 0.2, 1.0, 5, 0,
                                &map) == QDT_OK);
    REQUIRE(qdt_cooling_map_size(map) == 25);
    double row[5];
    int net = 0;
    bool any_net = false;
    for (int i = 0; i < 25; ++i) {
      REQUIRE(qdt_cooling_map_row(map, i, row, &net) == QDT_OK);
      CHECK(row[4] == doctest::Approx(row[2] - row[3]).epsilon(1e-12));
      if (net) any_net = true;
    }
    CHECK(any_net);
    qdt_cooling_map_free(map);
  }
}
