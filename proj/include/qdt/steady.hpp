/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <vector>

#include "qdt/bath.hpp"
#include "qdt/model_core.hpp"

namespace qdt {

/// Continuous-wave drive with spontaneous emission.
struct CWDriveSpec {
  double delta = 0.0;     // ps^-1
  double omega = 0.0;     // ps^-1
  BathSpec bath{};
  double gamma_sp = 1e-3; // ps^-1 (1 ns^-1 default), Lindblad prefactor
};

/// Laser-absorption heating model for the host material.
struct AbsorptionModel {
  double dipole_debye = 14.3;
  double density_over_absorption_m2 = 1.47e22;  // emitter density / alpha
  double refractive_index = 2.4;                // diamond
};

class NoUniqueSteadyState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectorised generator (column-major vec, basis {|0>,|1>}): coherent part,
/// dressed-basis phonon dissipators and -gamma_sp L(|0><1|), all in the
/// paper-normalised Lindblad form.
Eigen::Matrix4cd liouvillian(const CWDriveSpec& spec);

/// Null-space solve of the real-expanded generator with the trace
/// constraint appended. Throws NoUniqueSteadyState when the null space is
/// degenerate (e.g. all rates zero).
DensityMatrix steady_state(const CWDriveSpec& spec);

/// Residual ||L vec(rho)||_2 of a candidate steady state.
double steady_residual(const CWDriveSpec& spec, const DensityMatrix& rho);

/// Steady-state heat current phonons -> dot, ps^-2.
double cooling_power(const CWDriveSpec& spec);

/// Absorbed laser power per emitter in watts:
/// c eps0 n_r hbar^2 Omega^2 / (2 d^2) * alpha/density. Quadratic in Omega.
double absorption_heating(double omega, const AbsorptionModel& model);

struct CoolingMapRow {
  double delta = 0.0;       // ps^-1
  double omega = 0.0;       // ps^-1
  double cooling_W = 0.0;   // phonon heat uptake, watts
  double heating_W = 0.0;   // laser absorption, watts
  double net_W = 0.0;       // cooling - heating
  bool net_cooling = false;
};

struct CoolingMapSpec {
  double delta_min = -5.0, delta_max = 5.0;
  int n_delta = 41;
  double omega_min = 0.125, omega_max = 5.0;
  int n_omega = 41;
  int workers = 0;
};

/// Cooling/heating surfaces over the (delta, omega) grid; row order is
/// delta-major and deterministic.
std::vector<CoolingMapRow> net_cooling_map(const CoolingMapSpec& grid,
                                           const CWDriveSpec& base,
                                           const AbsorptionModel& model);

}  // namespace qdt
