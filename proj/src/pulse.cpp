/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/pulse.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdt {

namespace {
void validate(const ChirpedGaussianSpec& spec) {
  if (!(spec.tau0 > 0.0))
    throw std::invalid_argument("pulse: tau0 must be positive");
  if (!(spec.theta0 >= 0.0))
    throw std::invalid_argument("pulse: theta0 must be nonnegative");
}
}  // namespace

ChirpedPulseParams chirp_transform(const ChirpedGaussianSpec& spec) {
  validate(spec);
  const double t2 = spec.tau0 * spec.tau0;
  const double a = spec.chirp_a;
  ChirpedPulseParams p;
  p.tau = std::sqrt(t2 + (a * a) / t2);
  p.alpha = a / (t2 * t2 + a * a);
  p.peak_rabi =
      spec.theta0 / std::sqrt(2.0 * std::numbers::pi * spec.tau0 * p.tau);
  return p;
}

double rabi_at(const ChirpedGaussianSpec& spec, double t) {
  const ChirpedPulseParams p = chirp_transform(spec);
  const double x = (t - spec.t_center) / p.tau;
  return p.peak_rabi * std::exp(-0.5 * x * x);
}

double detuning_at(const ChirpedGaussianSpec& spec, double t) {
  const ChirpedPulseParams p = chirp_transform(spec);
  return spec.delta0 - p.alpha * (t - spec.t_center);
}

DriveFrame drive_at(const ChirpedGaussianSpec& spec, double t) {
  const ChirpedPulseParams p = chirp_transform(spec);
  const double x = (t - spec.t_center) / p.tau;
  return {spec.delta0 - p.alpha * (t - spec.t_center),
          p.peak_rabi * std::exp(-0.5 * x * x)};
}

double max_dressed_splitting(const ChirpedGaussianSpec& spec, double t_start,
                             double t_end) {
  const ChirpedPulseParams p = chirp_transform(spec);
  const int n = 4096;
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = t_start + (t_end - t_start) * i / n;
    const double x = (t - spec.t_center) / p.tau;
    const double omega = p.peak_rabi * std::exp(-0.5 * x * x);
    const double delta = spec.delta0 - p.alpha * (t - spec.t_center);
    best = std::max(best, std::hypot(delta, omega));
  }
  return best;
}

double SampledEnvelope::detuning_at_index(int i) const {
  if (i <= 0 || i + 1 >= static_cast<int>(field.size()))
    throw std::out_of_range("detuning_at_index: need interior point");
  // The full field is field(t) e^{-i omega0 t}, so the instantaneous laser
  // frequency is omega0 - d(arg field)/dt and the detuning E_x - omega(t)
  // picks up the phase slope with a plus sign.
  const double dphi =
      std::arg(field[i + 1] * std::conj(field[i - 1]));  // in (-pi, pi]
  return delta0 + dphi / (2.0 * dt);
}

SampledEnvelope synthesize_spectrally(const ChirpedGaussianSpec& spec,
                                      int n_samples, double time_window) {
  validate(spec);
  if (n_samples < 1024 || (n_samples & (n_samples - 1)) != 0)
    throw std::invalid_argument(
        "synthesize_spectrally: n_samples must be a power of two >= 1024");
  const ChirpedPulseParams p = chirp_transform(spec);
  if (time_window < 8.0 * p.tau)
    throw std::invalid_argument(
        "synthesize_spectrally: window below 8 tau would alias");

  const int n = n_samples;
  const double dt = time_window / n;
  SampledEnvelope out;
  out.dt = dt;
  out.delta0 = spec.delta0;
  out.t.resize(n);
  std::vector<std::complex<double>> env(n);
  const double peak0 =
      spec.theta0 / (std::sqrt(2.0 * std::numbers::pi) * spec.tau0);
  for (int j = 0; j < n; ++j) {
    const double t = spec.t_center - 0.5 * time_window + j * dt;
    out.t[j] = t;
    const double x = (t - spec.t_center) / spec.tau0;
    env[j] = peak0 * std::exp(-0.5 * x * x);
  }

  // Analysis convention env~(w) = integral env(t) e^{+iwt} dt pairs with the
  // synthesis env(t) = (1/2pi) integral env~(w) e^{-iwt} dw; with that pair
  // the spectral phase +a w^2/2 yields alpha = a/(tau0^4+a^2) with the sign
  // of a. Grid-offset phases cancel between the two transforms.
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec_w(n);
  fft.inv(spec_w, env);  // (1/n) sum_j env_j e^{+2pi i jk/n}
  const double dw = 2.0 * std::numbers::pi / (n * dt);
  for (int k = 0; k < n; ++k) {
    const int kk = k < n / 2 ? k : k - n;  // wrap to [-n/2, n/2)
    const double w = kk * dw;
    spec_w[k] *= std::exp(std::complex<double>(0.0, 0.5 * spec.chirp_a * w * w));
  }
  fft.fwd(out.field, spec_w);  // sum_k X_k e^{-2pi i jk/n}
  return out;
}

}  // namespace qdt
