/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/fcs.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdt/parallel.hpp"

namespace qdt {

CountingGrid CountingGrid::auto_for(double lambda_max, int n) {
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("CountingGrid: lambda_max must be positive");
  CountingGrid g;
  g.n = n;
  g.du = std::numbers::pi / (10.0 * lambda_max);
  return g;
}

void CountingGrid::validate(double lambda_max) const {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("CountingGrid: n must be a power of two");
  if (!(du > 0.0))
    throw std::invalid_argument("CountingGrid: du must be positive");
  if (n * du * lambda_max / std::numbers::pi < 8.0)
    throw std::invalid_argument(
        "CountingGrid: n du lambda_max / pi < 8; grid cannot resolve the "
        "largest single-phonon energy");
}

double CountingGrid::q_resolution() const {
  return 2.0 * std::numbers::pi / (n * du);
}

double CountingGrid::q_range() const { return std::numbers::pi / du; }

namespace {

CharacteristicScan scan_impl(const EvolutionSpec& spec,
                             const CountingGrid& grid, double t_stop) {
  const auto [t0, t1] = spec.window();
  const double lambda_max =
      max_dressed_splitting(spec.pulse, t0, t1);
  grid.validate(lambda_max);

  EvolutionSpec stopped = spec;
  stopped.t_end = std::min(t_stop, t1);

  CharacteristicScan scan;
  scan.grid = grid;
  scan.g.resize(grid.n);
  const DensityMatrix rho0 = ground_state();
  parallel_chunks(grid.n, 16, grid.workers, [&](long begin, long end) {
    for (long j = begin; j < end; ++j) {
      const double u = (j - grid.n / 2) * grid.du;
      scan.g[j] = evolve_counting(stopped, rho0, u);
    }
  });
  return scan;
}

}  // namespace

CharacteristicScan characteristic_scan(const EvolutionSpec& spec,
                                       const CountingGrid& grid) {
  return scan_impl(spec, grid, spec.window().second);
}

CharacteristicScan characteristic_scan_until(const EvolutionSpec& spec,
                                             const CountingGrid& grid,
                                             double t_stop) {
  return scan_impl(spec, grid, t_stop);
}

double HeatDistribution::mass_below(double q0) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] < q0) acc += density[i] * dq;
  return acc;
}

double HeatDistribution::total_mass() const {
  double acc = 0.0;
  for (double d : density) acc += d * dq;
  return acc;
}

HeatDistribution heat_distribution(const CharacteristicScan& scan) {
  const int n = scan.grid.n;
  const double du = scan.grid.du;
  const double dq = scan.grid.q_resolution();

  // G counts bath energy; the user axis is phonons -> dot, so transform
  // with e^{+i u Q}: P(Q_m) dq = (1/n) sum_k G_k e^{2 pi i k m / n} with
  // k, m wrapped to [-n/2, n/2). This is the one sign flip in the pipeline.
  std::vector<std::complex<double>> g_wrapped(n);
  for (int j = 0; j < n; ++j) {
    const int k = j < n / 2 ? j : j - n;  // FFT layout index -> counting index
    std::complex<double> v = scan.g[k + n / 2];
    if (scan.grid.apodize) {
      // Gentle Gaussian taper for presentation output only.
      const double x = static_cast<double>(k) / (n / 2);
      v *= std::exp(-8.0 * x * x);
    }
    g_wrapped[j] = v;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> p_wrapped(n);
  fft.inv(p_wrapped, g_wrapped);

  HeatDistribution out;
  out.n = n;
  out.du = du;
  out.dq = dq;
  out.q.resize(n);
  out.density.resize(n);
  double max_imag = 0.0;
  for (int j = 0; j < n; ++j) {
    const int m = j < n / 2 ? j : j - n;
    const int idx = m + n / 2;  // ascending-Q position
    out.q[idx] = m * dq;
    out.density[idx] = p_wrapped[j].real() / dq;
    max_imag = std::max(max_imag, std::abs(p_wrapped[j].imag()));
  }
  if (max_imag > 1e-6)
    throw AliasingError(
        "heat_distribution: transform has imaginary residue > 1e-6");

  const double mass = out.total_mass();
  if (std::abs(mass - 1.0) > 1e-3)
    throw AliasingError(
        "heat_distribution: normalisation off by more than 1e-3; heat axis "
        "too small (aliasing)");

  // Wrap detector: significant mass at the axis edges means the physical
  // support exceeded +-q_range.
  double edge_mass = 0.0;
  const int edge = std::max(1, n / 20);
  for (int j = 0; j < edge; ++j)
    edge_mass += (std::abs(out.density[j]) +
                  std::abs(out.density[n - 1 - j])) * dq;
  out.aliasing_suspected = edge_mass > 1e-3;

  const auto [mean, variance] = moments(out);
  out.mean = mean;
  out.variance = variance;
  return out;
}

std::pair<double, double> moments(const HeatDistribution& dist) {
  double mass = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < dist.q.size(); ++i) {
    mass += dist.density[i] * dist.dq;
    mean += dist.q[i] * dist.density[i] * dist.dq;
  }
  if (std::abs(mass - 1.0) > 1e-3)
    throw std::invalid_argument("moments: distribution not normalised");
  mean /= mass;
  double var = 0.0;
  for (std::size_t i = 0; i < dist.q.size(); ++i) {
    const double d = dist.q[i] - mean;
    var += d * d * dist.density[i] * dist.dq;
  }
  var /= mass;
  return {mean, var};
}

}  // namespace qdt
