/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/bath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdt {

double bose_occupation(double energy, const BathSpec& bath) {
  if (bath.temperature_K < 0.0)
    throw std::invalid_argument("bath: negative temperature");
  const double kt = bath.thermal_rate();
  if (kt == 0.0) return 0.0;
  if (energy <= energy_eps)
    throw std::invalid_argument(
        "bose_occupation: energy below energy_eps at finite temperature");
  return 1.0 / std::expm1(energy / kt);
}

double spectral_density_at(const SpectralDensity& j, double energy) {
  if (energy < 0.0)
    throw std::invalid_argument("spectral_density_at: negative energy");
  if (energy == 0.0) return 0.0;
  const double w3 = energy * energy * energy;
  switch (j.form) {
    case SpectralForm::super_ohmic_gaussian_cutoff: {
      const double x = energy / j.cutoff;
      return j.amplitude * w3 * std::exp(-x * x);
    }
    case SpectralForm::super_ohmic_exponential_cutoff:
      return j.amplitude * w3 * std::exp(-energy / j.cutoff);
  }
  throw std::logic_error("spectral_density_at: unknown form");
}

PhononRates phonon_rates(const DriveFrame& frame, const BathSpec& bath) {
  const double lambda = dressed_splitting(frame);
  if (lambda < lambda_eps || frame.omega == 0.0) return {};
  // Super-ohmic J makes the lambda -> 0 limit vanish; above the guard the
  // plain formula is well conditioned (expm1 keeps n_B accurate).
  const double jv = spectral_density_at(bath.spectral_density, lambda);
  const double kt = bath.thermal_rate();
  const double nb = kt == 0.0 ? 0.0 : 1.0 / std::expm1(lambda / kt);
  const double pref = std::numbers::pi * frame.omega * frame.omega * jv /
                      (2.0 * lambda * lambda);
  return {pref * nb, pref * (nb + 1.0)};
}

}  // namespace qdt
