/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qdt/bath.hpp"
#include "qdt/model_core.hpp"
#include "qdt/pulse.hpp"

namespace qdt {

/// A pulse-driven dissipative evolution problem. Window and step defaults
/// derive from the stretched pulse duration: [-6 tau, +6 tau] around
/// t_center and max_step = tau/100 so the envelope is always resolved.
struct EvolutionSpec {
  ChirpedGaussianSpec pulse{};
  BathSpec bath{};
  double t_start = std::nan("");  // ps; NaN: t_center - 6 tau
  double t_end = std::nan("");    // ps; NaN: t_center + 6 tau
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  double max_step = 0.0;          // ps; 0: tau/100
  int n_samples = 801;

  std::pair<double, double> window() const;
  double resolved_max_step() const;
};

struct TrajectorySample {
  double t = 0.0;
  DensityMatrix rho = DensityMatrix::Zero();
  double p_plus = 0.0;
  double p_minus = 0.0;
  double lambda = 0.0;           // ps^-1
  double omega = 0.0;            // ps^-1
  double delta = 0.0;            // ps^-1
  double gamma_a = 0.0;          // ps^-1 (Lindblad prefactor)
  double gamma_e = 0.0;          // ps^-1
  double heat_current = 0.0;     // ps^-2, phonons -> dot positive
  double heat_cumulative = 0.0;  // ps^-1, phonons -> dot positive
  double entropy = 0.0;          // k_B units
  double t_eff_rate = 0.0;       // ps^-1, signed; +inf when p+ == p-
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  double bath_temperature_K = 0.0;

  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
  /// Total heat transferred phonons -> dot over the window (ps^-1),
  /// accumulated inside the adaptive integration.
  double integrated_heat() const { return samples.back().heat_cumulative; }
};

/// Right-hand side of the master equation for the instantaneous drive:
///   drho/dt = -i[H, rho] - gamma_a L(|+><-|) rho - gamma_e L(|-><+|) rho,
///   L(O) rho = O^dag O rho + rho O^dag O - 2 O rho O^dag.
/// Traceless and Hermiticity-preserving.
DensityMatrix lindblad_rhs(double t, const DensityMatrix& rho,
                           const EvolutionSpec& spec);

/// Counting-field deformation: the sandwich term 2 O rho O^dag acquires
/// exp(-i u Lambda(t)) for |+><-| and exp(+i u Lambda(t)) for |-><+|.
/// Identical to lindblad_rhs at u = 0.
DensityMatrix counting_rhs(double t, const DensityMatrix& rho,
                           const EvolutionSpec& spec, double u);

inline DensityMatrix ground_state() {
  DensityMatrix r = DensityMatrix::Zero();
  r(0, 0) = 1.0;
  return r;
}

/// Adaptive integration of the master equation with dense output at
/// n_samples uniformly spaced times. Throws ode::IntegrationError on step
/// underflow or when the propagated state stops resembling a density
/// matrix (gross trace/positivity loss).
TrajectoryRecord evolve(const EvolutionSpec& spec,
                        const DensityMatrix& rho0 = ground_state());

/// Integrates the counting-field-deformed state and returns
/// G(u) = tr rho_u(t_end), the characteristic function of the heat the
/// bath gained over the window.
std::complex<double> evolve_counting(const EvolutionSpec& spec,
                                     const DensityMatrix& rho0, double u);

/// Generic-drive variant used by tests and the steady-state cross-check;
/// same physics with an arbitrary drive profile.
using DriveProfile = std::function<DriveFrame(double)>;
TrajectoryRecord evolve_profile(const DriveProfile& drive,
                                const BathSpec& bath, double t_start,
                                double t_end, const DensityMatrix& rho0,
                                double rel_tol = 1e-10, double abs_tol = 1e-13,
                                double max_step = 0.0, int n_samples = 401);

}  // namespace qdt
