/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef QDT_QDT_H
#define QDT_QDT_H

/* C API of the qdotthermo shared library: thermodynamics of a laser-driven
 * two-level emitter coupled to an acoustic-phonon bath.
 *
 * Conventions: times in ps, energies/rates in ps^-1 (hbar = 1), pulse areas
 * in radians, temperatures in kelvin at this boundary. Heat is positive
 * when it flows from the phonons into the emitter. All functions are
 * thread-safe; result objects are owned by the caller and released with the
 * matching _free call. Functions returning qdt_status report failure
 * details through qdt_last_error() (thread-local).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QDT_API __declspec(dllexport)
#else
#define QDT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qdt_status {
  QDT_OK = 0,
  QDT_ERR_INVALID_ARGUMENT = 1,
  QDT_ERR_INTEGRATION = 2,
  QDT_ERR_NO_UNIQUE_STEADY_STATE = 3,
  QDT_ERR_NOT_HEAT_ABSORBING = 4,
  QDT_ERR_ALIASING = 5,
  QDT_ERR_INTERNAL = 6
} qdt_status;

QDT_API const char* qdt_status_name(qdt_status status);
QDT_API const char* qdt_last_error(void);
QDT_API const char* qdt_version(void);

/* Unit helpers: k_B T / hbar in ps^-1. */
QDT_API double qdt_kelvin_to_rate(double kelvin);
QDT_API double qdt_rate_to_kelvin(double rate);

/* ------------------------------------------------------------------ */
/* Pulse                                                                */

typedef struct qdt_pulse_params {
  double tau0_ps;       /* bandwidth-limited duration, > 0 */
  double theta0_rad;    /* pulse area of the bandwidth-limited pulse, >= 0 */
  double chirp_a_ps2;   /* spectral chirp */
  double delta0_ps_inv; /* center detuning E_x - omega_0 */
  double t_center_ps;
} qdt_pulse_params;

QDT_API qdt_status qdt_pulse_derived(const qdt_pulse_params* pulse,
                                     double* tau_ps, double* alpha_ps_inv2,
                                     double* peak_rabi_ps_inv);

/* Omega, Delta and the dressed splitting Lambda at time t. Any output
 * pointer may be NULL. */
QDT_API qdt_status qdt_pulse_sample(const qdt_pulse_params* pulse, double t_ps,
                                    double* omega_ps_inv, double* delta_ps_inv,
                                    double* lambda_ps_inv);

/* ------------------------------------------------------------------ */
/* Bath                                                                 */

typedef enum qdt_spectral_form {
  QDT_SPECTRAL_GAUSSIAN_CUTOFF = 0,    /* A w^3 exp(-w^2/wc^2) */
  QDT_SPECTRAL_EXPONENTIAL_CUTOFF = 1  /* A w^3 exp(-w/wc) */
} qdt_spectral_form;

typedef struct qdt_bath_params {
  int form;              /* qdt_spectral_form */
  double amplitude_ps2;  /* A */
  double cutoff_ps_inv;  /* omega_c */
  double temperature_K;
} qdt_bath_params;

QDT_API qdt_status qdt_bath_spectral_density(const qdt_bath_params* bath,
                                             double energy_ps_inv,
                                             double* j_ps_inv);
QDT_API qdt_status qdt_bath_bose_occupation(const qdt_bath_params* bath,
                                            double energy_ps_inv,
                                            double* occupation);
/* Lindblad prefactors gamma_a, gamma_e for an instantaneous drive. */
QDT_API qdt_status qdt_bath_rates(const qdt_bath_params* bath,
                                  double delta_ps_inv, double omega_ps_inv,
                                  double* gamma_a_ps_inv,
                                  double* gamma_e_ps_inv);

/* ------------------------------------------------------------------ */
/* Pulse-driven evolution                                               */

typedef struct qdt_evolve_options {
  double t_start_ps;   /* NAN: t_center - 6 tau */
  double t_end_ps;     /* NAN: t_center + 6 tau */
  double rel_tol;      /* <= 0: 1e-10 */
  double abs_tol;      /* <= 0: 1e-13 */
  double max_step_ps;  /* <= 0: tau / 100 */
  int n_samples;       /* <= 1: 801 */
} qdt_evolve_options;

/* Fills the structs with the documented defaults. */
QDT_API void qdt_evolve_options_init(qdt_evolve_options* options);
QDT_API void qdt_bath_params_init_exciton(qdt_bath_params* bath);
QDT_API void qdt_bath_params_init_siv(qdt_bath_params* bath);

typedef struct qdt_trajectory qdt_trajectory;

/* Initial state |0><0|. */
QDT_API qdt_status qdt_evolve(const qdt_pulse_params* pulse,
                              const qdt_bath_params* bath,
                              const qdt_evolve_options* options,
                              qdt_trajectory** out);
QDT_API void qdt_trajectory_free(qdt_trajectory* traj);

QDT_API int qdt_trajectory_size(const qdt_trajectory* traj);
QDT_API int qdt_trajectory_ncols(void);
QDT_API const char* qdt_trajectory_column_name(int column);
/* Copies row i (qdt_trajectory_ncols() doubles) into buf. */
QDT_API qdt_status qdt_trajectory_row(const qdt_trajectory* traj, int i,
                                      double* buf, size_t buflen);

/* Totals over the trajectory. */
QDT_API qdt_status qdt_trajectory_integrated_heat(const qdt_trajectory* traj,
                                                  double* q_ps_inv);
QDT_API qdt_status qdt_trajectory_entropy_change(const qdt_trajectory* traj,
                                                 double* ds_kb);
QDT_API qdt_status qdt_trajectory_entropy_production(const qdt_trajectory* traj,
                                                     double hot_T_K,
                                                     double* sigma_kb);
/* eta = 1 - T_c dS / Q_h; fails with QDT_ERR_NOT_HEAT_ABSORBING when
 * Q_h <= 0. */
QDT_API qdt_status qdt_trajectory_engine_efficiency(const qdt_trajectory* traj,
                                                    double hot_T_K,
                                                    double cold_T_K,
                                                    double* eta,
                                                    double* eta_over_carnot);

/* ------------------------------------------------------------------ */
/* Counting statistics                                                  */

/* G(u) = tr rho_u at the end of the window (characteristic function of the
 * bath heat gain). */
QDT_API qdt_status qdt_counting_g(const qdt_pulse_params* pulse,
                                  const qdt_bath_params* bath,
                                  const qdt_evolve_options* options,
                                  double u_ps, double* g_re, double* g_im);

typedef struct qdt_counting_grid {
  double du_ps;   /* <= 0: auto, heat axis spans +-10 lambda_max */
  int n;          /* <= 0: 1024; must be a power of two */
  int apodize;    /* nonzero: presentation-only Gaussian taper */
  int workers;    /* <= 0: hardware concurrency */
} qdt_counting_grid;

typedef struct qdt_distribution qdt_distribution;

/* Scans G over the counting grid and reconstructs P(Q), phonons -> dot
 * sign convention. t_stop_ps = NAN means the full window. */
QDT_API qdt_status qdt_heat_distribution(const qdt_pulse_params* pulse,
                                         const qdt_bath_params* bath,
                                         const qdt_evolve_options* options,
                                         const qdt_counting_grid* grid,
                                         double t_stop_ps,
                                         qdt_distribution** out);
QDT_API void qdt_distribution_free(qdt_distribution* dist);

QDT_API int qdt_distribution_size(const qdt_distribution* dist);
QDT_API qdt_status qdt_distribution_point(const qdt_distribution* dist, int i,
                                          double* q_ps_inv,
                                          double* density_per_ps_inv);
QDT_API qdt_status qdt_distribution_moments(const qdt_distribution* dist,
                                            double* mean_ps_inv,
                                            double* variance_ps_inv2);
QDT_API qdt_status qdt_distribution_grid(const qdt_distribution* dist,
                                         double* du_ps, double* dq_ps_inv,
                                         int* n, int* aliasing_suspected);
/* Probability mass with Q < q0. */
QDT_API qdt_status qdt_distribution_mass_below(const qdt_distribution* dist,
                                               double q0_ps_inv, double* mass);

/* ------------------------------------------------------------------ */
/* Monte Carlo jump unraveling                                          */

typedef struct qdt_mc_options {
  double rel_tol;  /* <= 0: 1e-8 */
  double abs_tol;  /* <= 0: 1e-11 */
  int workers;     /* <= 0: hardware concurrency */
} qdt_mc_options;

typedef struct qdt_mc_stats qdt_mc_stats;

/* Histogram bins are centred on m*dq_ps_inv, m in [-nbins/2, nbins/2),
 * mirroring a reconstructed distribution grid. */
QDT_API qdt_status qdt_mc_sample(const qdt_pulse_params* pulse,
                                 const qdt_bath_params* bath,
                                 const qdt_evolve_options* options,
                                 long n_trajectories, uint64_t seed,
                                 double dq_ps_inv, int nbins,
                                 const qdt_mc_options* mc_options,
                                 qdt_mc_stats** out);
QDT_API void qdt_mc_stats_free(qdt_mc_stats* stats);

QDT_API qdt_status qdt_mc_mean_heat(const qdt_mc_stats* stats,
                                    double* mean_ps_inv,
                                    double* stderr_ps_inv);
QDT_API qdt_status qdt_mc_mean_jumps(const qdt_mc_stats* stats, double* mean);
QDT_API int qdt_mc_nbins(const qdt_mc_stats* stats);
QDT_API qdt_status qdt_mc_bin(const qdt_mc_stats* stats, int i,
                              double* q_center_ps_inv, double* mass);
/* Ensemble-averaged final state as re/im pairs, row-major (8 doubles),
 * with per-entry standard errors (also 8 doubles). */
QDT_API qdt_status qdt_mc_final_state(const qdt_mc_stats* stats,
                                      double* rho_re_im_8,
                                      double* stderr_re_im_8);

/* ------------------------------------------------------------------ */
/* Continuous-wave steady state                                         */

typedef struct qdt_cw_params {
  double delta_ps_inv;
  double omega_ps_inv;
  qdt_bath_params bath;
  double gamma_sp_ps_inv; /* spontaneous-emission Lindblad prefactor */
} qdt_cw_params;

/* rho_re_im_8: row-major re/im pairs; residual may be NULL. Fails with
 * QDT_ERR_NO_UNIQUE_STEADY_STATE on a degenerate generator. */
QDT_API qdt_status qdt_steady_state(const qdt_cw_params* cw,
                                    double* rho_re_im_8, double* residual);
/* Steady heat current phonons -> dot; watts output may be NULL. */
QDT_API qdt_status qdt_cooling_power(const qdt_cw_params* cw,
                                     double* power_ps_inv2, double* power_W);

typedef struct qdt_absorption_params {
  double dipole_debye;                  /* <= 0: 14.3 */
  double density_over_absorption_m2;    /* <= 0: 1.47e22 */
  double refractive_index;              /* <= 0: 2.4 */
} qdt_absorption_params;

QDT_API qdt_status qdt_absorption_heating(double omega_ps_inv,
                                          const qdt_absorption_params* model,
                                          double* power_W);

typedef struct qdt_cooling_map qdt_cooling_map;

QDT_API qdt_status qdt_cooling_map_run(const qdt_cw_params* base,
                                       const qdt_absorption_params* model,
                                       double delta_min, double delta_max,
                                       int n_delta, double omega_min,
                                       double omega_max, int n_omega,
                                       int workers, qdt_cooling_map** out);
QDT_API void qdt_cooling_map_free(qdt_cooling_map* map);
QDT_API int qdt_cooling_map_size(const qdt_cooling_map* map);
/* Row layout: delta, omega, cooling_W, heating_W, net_W. */
QDT_API qdt_status qdt_cooling_map_row(const qdt_cooling_map* map, int i,
                                       double* row5, int* net_cooling);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QDT_QDT_H */
