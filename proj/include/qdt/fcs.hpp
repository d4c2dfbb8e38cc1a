/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <complex>
#include <vector>

#include "qdt/propagator.hpp"

namespace qdt {

/// Uniform counting-field grid u_k = k du for k in [-n/2, n/2). The
/// reconstructed heat axis spans +-pi/du with resolution 2 pi / (n du).
struct CountingGrid {
  double du = 0.0;      // ps
  int n = 1024;         // power of two
  bool apodize = false; // presentation-only Gaussian window, off by default
  int workers = 0;      // 0: hardware concurrency

  /// du such that the heat axis spans +-10 lambda_max.
  static CountingGrid auto_for(double lambda_max, int n = 1024);

  /// Requires power-of-two n and n du lambda_max / pi >= 8 so single-phonon
  /// energies stay resolved.
  void validate(double lambda_max) const;

  double q_resolution() const;  // ps^-1
  double q_range() const;       // ps^-1, half-width
};

struct CharacteristicScan {
  CountingGrid grid;
  /// g[j] = G(u) at u = (j - n/2) du, j = 0..n-1.
  std::vector<std::complex<double>> g;

  double u_at(int j) const { return (j - grid.n / 2) * grid.du; }
  const std::complex<double>& at_zero() const { return g[grid.n / 2]; }
};

/// Integrates the deformed master equation at every grid u. Each u-sample
/// is independent; the scan fans them out over the worker pool.
CharacteristicScan characteristic_scan(const EvolutionSpec& spec,
                                       const CountingGrid& grid);

/// Same, stopping the counting integration at t_stop (for distribution
/// snapshots mid-pulse).
CharacteristicScan characteristic_scan_until(const EvolutionSpec& spec,
                                             const CountingGrid& grid,
                                             double t_stop);

/// Sampled heat distribution, phonons -> dot sign convention (the single
/// point where the bath-energy bookkeeping sign is flipped for users).
struct HeatDistribution {
  std::vector<double> q;        // ps^-1, ascending, uniform
  std::vector<double> density;  // probability per ps^-1
  double dq = 0.0;
  double du = 0.0;
  int n = 0;
  double mean = 0.0;      // ps^-1
  double variance = 0.0;  // ps^-2
  bool aliasing_suspected = false;

  /// Probability mass with Q < q0.
  double mass_below(double q0) const;
  double total_mass() const;
};

class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse discrete Fourier transform of the scan onto the heat axis.
/// Throws AliasingError when the reconstructed mass misses normalisation
/// by more than 1e-3 (heat axis too small for the pulse).
HeatDistribution heat_distribution(const CharacteristicScan& scan);

/// Grid-quadrature mean and variance.
std::pair<double, double> moments(const HeatDistribution& dist);

}  // namespace qdt
