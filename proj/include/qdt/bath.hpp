/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "qdt/model_core.hpp"

namespace qdt {

enum class SpectralForm {
  super_ohmic_gaussian_cutoff,      // A w^3 exp(-w^2/wc^2)
  super_ohmic_exponential_cutoff,   // A w^3 exp(-w/wc)
};

struct SpectralDensity {
  SpectralForm form = SpectralForm::super_ohmic_gaussian_cutoff;
  double amplitude = 0.027;  // A, ps^2
  double cutoff = 2.2;       // omega_c, ps^-1

  /// InGaAs-dot deformation-potential defaults.
  static SpectralDensity exciton_default() { return {}; }
  /// Silicon-vacancy defaults.
  static SpectralDensity siv_default() {
    return {SpectralForm::super_ohmic_exponential_cutoff, 0.005, 5.0};
  }
};

struct BathSpec {
  double temperature_K = 20.0;
  SpectralDensity spectral_density{};

  /// k_B T / hbar in ps^-1.
  double thermal_rate() const { return kelvin_to_angular_rate(temperature_K); }
};

inline constexpr double energy_eps = 1e-9;  // ps^-1, occupation guard

/// Bose occupation 1/(exp(E/kT) - 1); 0 at T = 0. Throws for E <= energy_eps
/// at finite temperature (the rate formulas handle that limit themselves).
double bose_occupation(double energy, const BathSpec& bath);

/// J(omega) for omega >= 0.
double spectral_density_at(const SpectralDensity& j, double energy);

/// Lindblad prefactors gamma_a = pi Omega^2 n_B(L) J(L) / (2 L^2) and
/// gamma_e with n_B + 1, both zero for L < lambda_eps. The population
/// transfer rates of the dissipator are twice these values.
struct PhononRates {
  double absorption = 0.0;  // gamma_a, ps^-1
  double emission = 0.0;    // gamma_e, ps^-1
};
PhononRates phonon_rates(const DriveFrame& frame, const BathSpec& bath);

}  // namespace qdt
