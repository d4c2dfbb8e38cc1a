/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <vector>

#include "qdt/model_core.hpp"

namespace qdt {

/// Linearly-chirped Gaussian pulse, parameterised by the bandwidth-limited
/// pulse it is derived from.
struct ChirpedGaussianSpec {
  double tau0 = 1.0;      // ps, bandwidth-limited duration (> 0)
  double theta0 = 0.0;    // rad, pulse area of the bandwidth-limited pulse
  double chirp_a = 0.0;   // ps^2, spectral chirp
  double delta0 = 0.0;    // ps^-1, center detuning E_x - omega_0
  double t_center = 0.0;  // ps
};

/// Derived time-domain parameters of the chirped pulse.
struct ChirpedPulseParams {
  double tau = 0.0;        // ps, stretched duration (>= tau0)
  double alpha = 0.0;      // ps^-2, temporal chirp rate (sign of chirp_a)
  double peak_rabi = 0.0;  // ps^-1
};

/// tau = sqrt(tau0^2 + a^2/tau0^2), alpha = a/(tau0^4 + a^2),
/// peak = theta0 / sqrt(2 pi tau0 tau).
ChirpedPulseParams chirp_transform(const ChirpedGaussianSpec& spec);

/// Omega(t) = peak * exp(-(t-t_center)^2 / (2 tau^2)).
double rabi_at(const ChirpedGaussianSpec& spec, double t);

/// Delta(t) = delta0 - alpha * (t - t_center). Positive chirp sweeps the
/// laser frequency upward, so Delta starts positive for delta0 = 0.
double detuning_at(const ChirpedGaussianSpec& spec, double t);

DriveFrame drive_at(const ChirpedGaussianSpec& spec, double t);

/// Largest dressed splitting over [t_start, t_end], by dense sampling.
double max_dressed_splitting(const ChirpedGaussianSpec& spec, double t_start,
                             double t_end);

/// Complex time-domain envelope from the spectral-domain construction:
/// Gaussian spectrum of the bandwidth-limited pulse times the quadratic
/// spectral phase exp(i a (omega-omega0)^2 / 2). Serves as the independent
/// oracle for chirp_transform / rabi_at / detuning_at.
struct SampledEnvelope {
  std::vector<double> t;                      // ps, uniform grid
  std::vector<std::complex<double>> field;    // Rabi-frequency envelope
  double dt = 0.0;
  double delta0 = 0.0;

  double modulus_at(int i) const { return std::abs(field[i]); }
  /// delta0 + d/dt arg(field) by central difference: the instantaneous
  /// detuning implied by the envelope phase.
  double detuning_at_index(int i) const;
};

/// n_samples must be a power of two >= 1024; time_window (total width,
/// centered on t_center) must cover at least 8 tau or the call throws.
SampledEnvelope synthesize_spectrally(const ChirpedGaussianSpec& spec,
                                      int n_samples, double time_window);

}  // namespace qdt
