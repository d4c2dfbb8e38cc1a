/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/qdt.h"

#include <cmath>
#include <cstring>
#include <string>

#include "qdt/bath.hpp"
#include "qdt/constants.hpp"
#include "qdt/fcs.hpp"
#include "qdt/integrate.hpp"
#include "qdt/model_core.hpp"
#include "qdt/propagator.hpp"
#include "qdt/pulse.hpp"
#include "qdt/steady.hpp"
#include "qdt/thermo.hpp"
#include "qdt/unraveling.hpp"

struct qdt_trajectory {
  qdt::TrajectoryRecord rec;
};
struct qdt_distribution {
  qdt::HeatDistribution dist;
};
struct qdt_mc_stats {
  qdt::JumpTrajectoryStats stats;
};
struct qdt_cooling_map {
  std::vector<qdt::CoolingMapRow> rows;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

template <class Fn>
qdt_status wrap(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QDT_OK;
  } catch (const qdt::ode::IntegrationError& e) {
    set_error(e.what());
    return QDT_ERR_INTEGRATION;
  } catch (const qdt::NoUniqueSteadyState& e) {
    set_error(e.what());
    return QDT_ERR_NO_UNIQUE_STEADY_STATE;
  } catch (const qdt::NotHeatAbsorbing& e) {
    set_error(e.what());
    return QDT_ERR_NOT_HEAT_ABSORBING;
  } catch (const qdt::AliasingError& e) {
    set_error(e.what());
    return QDT_ERR_ALIASING;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return QDT_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QDT_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return QDT_ERR_INTERNAL;
  }
}

qdt_status require(bool ok, const char* what) {
  if (ok) return QDT_OK;
  set_error(what);
  return QDT_ERR_INVALID_ARGUMENT;
}

qdt::ChirpedGaussianSpec to_pulse(const qdt_pulse_params& p) {
  return {p.tau0_ps, p.theta0_rad, p.chirp_a_ps2, p.delta0_ps_inv,
          p.t_center_ps};
}

qdt::BathSpec to_bath(const qdt_bath_params& b) {
  qdt::BathSpec spec;
  spec.temperature_K = b.temperature_K;
  spec.spectral_density.form =
      b.form == QDT_SPECTRAL_EXPONENTIAL_CUTOFF
          ? qdt::SpectralForm::super_ohmic_exponential_cutoff
          : qdt::SpectralForm::super_ohmic_gaussian_cutoff;
  spec.spectral_density.amplitude = b.amplitude_ps2;
  spec.spectral_density.cutoff = b.cutoff_ps_inv;
  return spec;
}

qdt::EvolutionSpec to_evolution(const qdt_pulse_params& p,
                                const qdt_bath_params& b,
                                const qdt_evolve_options* o) {
  qdt::EvolutionSpec spec;
  spec.pulse = to_pulse(p);
  spec.bath = to_bath(b);
  if (o) {
    spec.t_start = o->t_start_ps;
    spec.t_end = o->t_end_ps;
    if (o->rel_tol > 0.0) spec.rel_tol = o->rel_tol;
    if (o->abs_tol > 0.0) spec.abs_tol = o->abs_tol;
    if (o->max_step_ps > 0.0) spec.max_step = o->max_step_ps;
    if (o->n_samples > 1) spec.n_samples = o->n_samples;
  }
  return spec;
}

qdt::AbsorptionModel to_absorption(const qdt_absorption_params* m) {
  qdt::AbsorptionModel model;
  if (m) {
    if (m->dipole_debye > 0.0) model.dipole_debye = m->dipole_debye;
    if (m->density_over_absorption_m2 > 0.0)
      model.density_over_absorption_m2 = m->density_over_absorption_m2;
    if (m->refractive_index > 0.0)
      model.refractive_index = m->refractive_index;
  }
  return model;
}

qdt::CWDriveSpec to_cw(const qdt_cw_params& c) {
  qdt::CWDriveSpec spec;
  spec.delta = c.delta_ps_inv;
  spec.omega = c.omega_ps_inv;
  spec.bath = to_bath(c.bath);
  spec.gamma_sp = c.gamma_sp_ps_inv;
  return spec;
}

void write_rho8(const qdt::DensityMatrix& rho, double* buf) {
  int k = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      buf[k++] = rho(r, c).real();
      buf[k++] = rho(r, c).imag();
    }
}

constexpr const char* kTrajectoryColumns[] = {
    "t_ps",
    "rho00",
    "rho01_re",
    "rho01_im",
    "rho11",
    "p_plus",
    "p_minus",
    "lambda_ps_inv",
    "omega_ps_inv",
    "delta_ps_inv",
    "gamma_a_ps_inv",
    "gamma_e_ps_inv",
    "heat_current_ps_inv2",
    "heat_cumulative_ps_inv",
    "entropy_kb",
    "t_eff_K",
};
constexpr int kTrajectoryNcols =
    static_cast<int>(sizeof(kTrajectoryColumns) / sizeof(char*));

}  // namespace

extern "C" {

const char* qdt_status_name(qdt_status status) {
  switch (status) {
    case QDT_OK: return "ok";
    case QDT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QDT_ERR_INTEGRATION: return "integration failure";
    case QDT_ERR_NO_UNIQUE_STEADY_STATE: return "no unique steady state";
    case QDT_ERR_NOT_HEAT_ABSORBING: return "not a heat-absorbing stroke";
    case QDT_ERR_ALIASING: return "heat axis aliasing";
    case QDT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qdt_last_error(void) { return g_last_error.c_str(); }

const char* qdt_version(void) { return "0.1.0"; }

double qdt_kelvin_to_rate(double kelvin) {
  return qdt::kelvin_to_angular_rate(kelvin);
}

double qdt_rate_to_kelvin(double rate) {
  return qdt::angular_rate_to_kelvin(rate);
}

qdt_status qdt_pulse_derived(const qdt_pulse_params* pulse, double* tau_ps,
                             double* alpha_ps_inv2, double* peak_rabi_ps_inv) {
  if (qdt_status s = require(pulse != nullptr, "pulse is NULL")) return s;
  return wrap([&] {
    const qdt::ChirpedPulseParams d = qdt::chirp_transform(to_pulse(*pulse));
    if (tau_ps) *tau_ps = d.tau;
    if (alpha_ps_inv2) *alpha_ps_inv2 = d.alpha;
    if (peak_rabi_ps_inv) *peak_rabi_ps_inv = d.peak_rabi;
  });
}

qdt_status qdt_pulse_sample(const qdt_pulse_params* pulse, double t_ps,
                            double* omega_ps_inv, double* delta_ps_inv,
                            double* lambda_ps_inv) {
  if (qdt_status s = require(pulse != nullptr, "pulse is NULL")) return s;
  return wrap([&] {
    const qdt::DriveFrame f = qdt::drive_at(to_pulse(*pulse), t_ps);
    if (omega_ps_inv) *omega_ps_inv = f.omega;
    if (delta_ps_inv) *delta_ps_inv = f.delta;
    if (lambda_ps_inv) *lambda_ps_inv = qdt::dressed_splitting(f);
  });
}

qdt_status qdt_bath_spectral_density(const qdt_bath_params* bath,
                                     double energy_ps_inv, double* j_ps_inv) {
  if (qdt_status s = require(bath && j_ps_inv, "NULL argument")) return s;
  return wrap([&] {
    *j_ps_inv = qdt::spectral_density_at(to_bath(*bath).spectral_density,
                                         energy_ps_inv);
  });
}

qdt_status qdt_bath_bose_occupation(const qdt_bath_params* bath,
                                    double energy_ps_inv, double* occupation) {
  if (qdt_status s = require(bath && occupation, "NULL argument")) return s;
  return wrap([&] {
    *occupation = qdt::bose_occupation(energy_ps_inv, to_bath(*bath));
  });
}

qdt_status qdt_bath_rates(const qdt_bath_params* bath, double delta_ps_inv,
                          double omega_ps_inv, double* gamma_a_ps_inv,
                          double* gamma_e_ps_inv) {
  if (qdt_status s = require(bath != nullptr, "bath is NULL")) return s;
  return wrap([&] {
    const qdt::PhononRates r =
        qdt::phonon_rates({delta_ps_inv, omega_ps_inv}, to_bath(*bath));
    if (gamma_a_ps_inv) *gamma_a_ps_inv = r.absorption;
    if (gamma_e_ps_inv) *gamma_e_ps_inv = r.emission;
  });
}

void qdt_evolve_options_init(qdt_evolve_options* options) {
  if (!options) return;
  options->t_start_ps = std::nan("");
  options->t_end_ps = std::nan("");
  options->rel_tol = 1e-10;
  options->abs_tol = 1e-13;
  options->max_step_ps = 0.0;
  options->n_samples = 801;
}

void qdt_bath_params_init_exciton(qdt_bath_params* bath) {
  if (!bath) return;
  bath->form = QDT_SPECTRAL_GAUSSIAN_CUTOFF;
  bath->amplitude_ps2 = 0.027;
  bath->cutoff_ps_inv = 2.2;
  bath->temperature_K = 20.0;
}

void qdt_bath_params_init_siv(qdt_bath_params* bath) {
  if (!bath) return;
  bath->form = QDT_SPECTRAL_EXPONENTIAL_CUTOFF;
  bath->amplitude_ps2 = 0.005;
  bath->cutoff_ps_inv = 5.0;
  bath->temperature_K = 20.0;
}

qdt_status qdt_evolve(const qdt_pulse_params* pulse,
                      const qdt_bath_params* bath,
                      const qdt_evolve_options* options,
                      qdt_trajectory** out) {
  if (qdt_status s = require(pulse && bath && out, "NULL argument")) return s;
  return wrap([&] {
    auto rec = qdt::evolve(to_evolution(*pulse, *bath, options));
    *out = new qdt_trajectory{std::move(rec)};
  });
}

void qdt_trajectory_free(qdt_trajectory* traj) { delete traj; }

int qdt_trajectory_size(const qdt_trajectory* traj) {
  return traj ? static_cast<int>(traj->rec.samples.size()) : 0;
}

int qdt_trajectory_ncols(void) { return kTrajectoryNcols; }

const char* qdt_trajectory_column_name(int column) {
  if (column < 0 || column >= kTrajectoryNcols) return nullptr;
  return kTrajectoryColumns[column];
}

qdt_status qdt_trajectory_row(const qdt_trajectory* traj, int i, double* buf,
                              size_t buflen) {
  if (qdt_status s = require(traj && buf, "NULL argument")) return s;
  if (qdt_status s = require(i >= 0 && i < qdt_trajectory_size(traj),
                             "row index out of range"))
    return s;
  if (qdt_status s = require(buflen >= static_cast<size_t>(kTrajectoryNcols),
                             "buffer too small"))
    return s;
  const qdt::TrajectorySample& s = traj->rec.samples[i];
  buf[0] = s.t;
  buf[1] = s.rho(0, 0).real();
  buf[2] = s.rho(0, 1).real();
  buf[3] = s.rho(0, 1).imag();
  buf[4] = s.rho(1, 1).real();
  buf[5] = s.p_plus;
  buf[6] = s.p_minus;
  buf[7] = s.lambda;
  buf[8] = s.omega;
  buf[9] = s.delta;
  buf[10] = s.gamma_a;
  buf[11] = s.gamma_e;
  buf[12] = s.heat_current;
  buf[13] = s.heat_cumulative;
  buf[14] = s.entropy;
  buf[15] = qdt::angular_rate_to_kelvin(s.t_eff_rate);
  return QDT_OK;
}

qdt_status qdt_trajectory_integrated_heat(const qdt_trajectory* traj,
                                          double* q_ps_inv) {
  if (qdt_status s = require(traj && q_ps_inv, "NULL argument")) return s;
  return wrap([&] { *q_ps_inv = qdt::integrated_heat(traj->rec); });
}

qdt_status qdt_trajectory_entropy_change(const qdt_trajectory* traj,
                                         double* ds_kb) {
  if (qdt_status s = require(traj && ds_kb, "NULL argument")) return s;
  return wrap([&] {
    *ds_kb = traj->rec.back().entropy - traj->rec.front().entropy;
  });
}

qdt_status qdt_trajectory_entropy_production(const qdt_trajectory* traj,
                                             double hot_T_K, double* sigma_kb) {
  if (qdt_status s = require(traj && sigma_kb, "NULL argument")) return s;
  return wrap([&] {
    *sigma_kb = qdt::entropy_production(traj->rec, hot_T_K);
  });
}

qdt_status qdt_trajectory_engine_efficiency(const qdt_trajectory* traj,
                                            double hot_T_K, double cold_T_K,
                                            double* eta,
                                            double* eta_over_carnot) {
  if (qdt_status s = require(traj != nullptr, "trajectory is NULL")) return s;
  return wrap([&] {
    const qdt::EngineEfficiency e =
        qdt::engine_efficiency(traj->rec, {hot_T_K, cold_T_K});
    if (eta) *eta = e.eta;
    if (eta_over_carnot) *eta_over_carnot = e.eta_over_carnot;
  });
}

qdt_status qdt_counting_g(const qdt_pulse_params* pulse,
                          const qdt_bath_params* bath,
                          const qdt_evolve_options* options, double u_ps,
                          double* g_re, double* g_im) {
  if (qdt_status s = require(pulse && bath, "NULL argument")) return s;
  return wrap([&] {
    const std::complex<double> g = qdt::evolve_counting(
        to_evolution(*pulse, *bath, options), qdt::ground_state(), u_ps);
    if (g_re) *g_re = g.real();
    if (g_im) *g_im = g.imag();
  });
}

qdt_status qdt_heat_distribution(const qdt_pulse_params* pulse,
                                 const qdt_bath_params* bath,
                                 const qdt_evolve_options* options,
                                 const qdt_counting_grid* grid,
                                 double t_stop_ps, qdt_distribution** out) {
  if (qdt_status s = require(pulse && bath && out, "NULL argument")) return s;
  return wrap([&] {
    const qdt::EvolutionSpec spec = to_evolution(*pulse, *bath, options);
    const auto [t0, t1] = spec.window();
    const double lm = qdt::max_dressed_splitting(spec.pulse, t0, t1);
    qdt::CountingGrid g = qdt::CountingGrid::auto_for(lm);
    if (grid) {
      if (grid->n > 0) g.n = grid->n;
      if (grid->du_ps > 0.0)
        g.du = grid->du_ps;
      else
        g = qdt::CountingGrid::auto_for(lm, g.n);
      g.apodize = grid->apodize != 0;
      g.workers = grid->workers;
    }
    const qdt::CharacteristicScan scan =
        std::isnan(t_stop_ps) ? qdt::characteristic_scan(spec, g)
                              : qdt::characteristic_scan_until(spec, g,
                                                               t_stop_ps);
    *out = new qdt_distribution{qdt::heat_distribution(scan)};
  });
}

void qdt_distribution_free(qdt_distribution* dist) { delete dist; }

int qdt_distribution_size(const qdt_distribution* dist) {
  return dist ? static_cast<int>(dist->dist.q.size()) : 0;
}

qdt_status qdt_distribution_point(const qdt_distribution* dist, int i,
                                  double* q_ps_inv,
                                  double* density_per_ps_inv) {
  if (qdt_status s = require(dist != nullptr, "distribution is NULL"))
    return s;
  if (qdt_status s = require(i >= 0 && i < qdt_distribution_size(dist),
                             "index out of range"))
    return s;
  if (q_ps_inv) *q_ps_inv = dist->dist.q[i];
  if (density_per_ps_inv) *density_per_ps_inv = dist->dist.density[i];
  return QDT_OK;
}

qdt_status qdt_distribution_moments(const qdt_distribution* dist,
                                    double* mean_ps_inv,
                                    double* variance_ps_inv2) {
  if (qdt_status s = require(dist != nullptr, "distribution is NULL"))
    return s;
  if (mean_ps_inv) *mean_ps_inv = dist->dist.mean;
  if (variance_ps_inv2) *variance_ps_inv2 = dist->dist.variance;
  return QDT_OK;
}

qdt_status qdt_distribution_grid(const qdt_distribution* dist, double* du_ps,
                                 double* dq_ps_inv, int* n,
                                 int* aliasing_suspected) {
  if (qdt_status s = require(dist != nullptr, "distribution is NULL"))
    return s;
  if (du_ps) *du_ps = dist->dist.du;
  if (dq_ps_inv) *dq_ps_inv = dist->dist.dq;
  if (n) *n = dist->dist.n;
  if (aliasing_suspected)
    *aliasing_suspected = dist->dist.aliasing_suspected ? 1 : 0;
  return QDT_OK;
}

qdt_status qdt_distribution_mass_below(const qdt_distribution* dist,
                                       double q0_ps_inv, double* mass) {
  if (qdt_status s = require(dist && mass, "NULL argument")) return s;
  *mass = dist->dist.mass_below(q0_ps_inv);
  return QDT_OK;
}

qdt_status qdt_mc_sample(const qdt_pulse_params* pulse,
                         const qdt_bath_params* bath,
                         const qdt_evolve_options* options,
                         long n_trajectories, uint64_t seed, double dq_ps_inv,
                         int nbins, const qdt_mc_options* mc_options,
                         qdt_mc_stats** out) {
  if (qdt_status s = require(pulse && bath && out, "NULL argument")) return s;
  return wrap([&] {
    const qdt::EvolutionSpec spec = to_evolution(*pulse, *bath, options);
    const qdt::HistogramSpec hist =
        qdt::HistogramSpec::aligned(dq_ps_inv, nbins);
    qdt::McOptions mo;
    if (mc_options) {
      if (mc_options->rel_tol > 0.0) mo.rel_tol = mc_options->rel_tol;
      if (mc_options->abs_tol > 0.0) mo.abs_tol = mc_options->abs_tol;
      mo.workers = mc_options->workers;
    }
    *out = new qdt_mc_stats{
        qdt::sample_trajectories(spec, n_trajectories, seed, hist, mo)};
  });
}

void qdt_mc_stats_free(qdt_mc_stats* stats) { delete stats; }

qdt_status qdt_mc_mean_heat(const qdt_mc_stats* stats, double* mean_ps_inv,
                            double* stderr_ps_inv) {
  if (qdt_status s = require(stats != nullptr, "stats is NULL")) return s;
  if (mean_ps_inv) *mean_ps_inv = stats->stats.mean_heat;
  if (stderr_ps_inv) *stderr_ps_inv = stats->stats.stderr_heat;
  return QDT_OK;
}

qdt_status qdt_mc_mean_jumps(const qdt_mc_stats* stats, double* mean) {
  if (qdt_status s = require(stats && mean, "NULL argument")) return s;
  *mean = stats->stats.mean_jumps;
  return QDT_OK;
}

int qdt_mc_nbins(const qdt_mc_stats* stats) {
  return stats ? stats->stats.histogram.nbins : 0;
}

qdt_status qdt_mc_bin(const qdt_mc_stats* stats, int i,
                      double* q_center_ps_inv, double* mass) {
  if (qdt_status s = require(stats != nullptr, "stats is NULL")) return s;
  if (qdt_status s =
          require(i >= 0 && i < qdt_mc_nbins(stats), "index out of range"))
    return s;
  const qdt::HistogramSpec& h = stats->stats.histogram;
  if (q_center_ps_inv) *q_center_ps_inv = h.q_min + (i + 0.5) * h.dq;
  if (mass) *mass = stats->stats.bin_mass[i];
  return QDT_OK;
}

qdt_status qdt_mc_final_state(const qdt_mc_stats* stats, double* rho_re_im_8,
                              double* stderr_re_im_8) {
  if (qdt_status s = require(stats != nullptr, "stats is NULL")) return s;
  if (rho_re_im_8) write_rho8(stats->stats.mean_final, rho_re_im_8);
  if (stderr_re_im_8) {
    int k = 0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        stderr_re_im_8[k++] = stats->stats.stderr_final_re(r, c);
        stderr_re_im_8[k++] = stats->stats.stderr_final_im(r, c);
      }
  }
  return QDT_OK;
}

qdt_status qdt_steady_state(const qdt_cw_params* cw, double* rho_re_im_8,
                            double* residual) {
  if (qdt_status s = require(cw && rho_re_im_8, "NULL argument")) return s;
  return wrap([&] {
    const qdt::CWDriveSpec spec = to_cw(*cw);
    const qdt::DensityMatrix rho = qdt::steady_state(spec);
    write_rho8(rho, rho_re_im_8);
    if (residual) *residual = qdt::steady_residual(spec, rho);
  });
}

qdt_status qdt_cooling_power(const qdt_cw_params* cw, double* power_ps_inv2,
                             double* power_W) {
  if (qdt_status s = require(cw != nullptr, "cw is NULL")) return s;
  return wrap([&] {
    const double p = qdt::cooling_power(to_cw(*cw));
    if (power_ps_inv2) *power_ps_inv2 = p;
    if (power_W) *power_W = p * qdt::constants::ps_inv2_to_watt;
  });
}

qdt_status qdt_absorption_heating(double omega_ps_inv,
                                  const qdt_absorption_params* model,
                                  double* power_W) {
  if (qdt_status s = require(power_W != nullptr, "power_W is NULL")) return s;
  return wrap([&] {
    *power_W = qdt::absorption_heating(omega_ps_inv, to_absorption(model));
  });
}

qdt_status qdt_cooling_map_run(const qdt_cw_params* base,
                               const qdt_absorption_params* model,
                               double delta_min, double delta_max, int n_delta,
                               double omega_min, double omega_max, int n_omega,
                               int workers, qdt_cooling_map** out) {
  if (qdt_status s = require(base && out, "NULL argument")) return s;
  return wrap([&] {
    qdt::CoolingMapSpec grid;
    grid.delta_min = delta_min;
    grid.delta_max = delta_max;
    grid.n_delta = n_delta;
    grid.omega_min = omega_min;
    grid.omega_max = omega_max;
    grid.n_omega = n_omega;
    grid.workers = workers;
    *out = new qdt_cooling_map{
        qdt::net_cooling_map(grid, to_cw(*base), to_absorption(model))};
  });
}

void qdt_cooling_map_free(qdt_cooling_map* map) { delete map; }

int qdt_cooling_map_size(const qdt_cooling_map* map) {
  return map ? static_cast<int>(map->rows.size()) : 0;
}

qdt_status qdt_cooling_map_row(const qdt_cooling_map* map, int i, double* row5,
                               int* net_cooling) {
  if (qdt_status s = require(map && row5, "NULL argument")) return s;
  if (qdt_status s =
          require(i >= 0 && i < qdt_cooling_map_size(map), "index out of range"))
    return s;
  const qdt::CoolingMapRow& r = map->rows[i];
  row5[0] = r.delta;
  row5[1] = r.omega;
  row5[2] = r.cooling_W;
  row5[3] = r.heating_W;
  row5[4] = r.net_W;
  if (net_cooling) *net_cooling = r.net_cooling ? 1 : 0;
  return QDT_OK;
}

}  // extern "C"
