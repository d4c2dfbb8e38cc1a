/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qdt/propagator.hpp"

namespace qdt {

/// Counter-based generator: every draw is a hash of (key, counter), so a
/// trajectory keyed by (seed, index) produces the same stream no matter
/// how the work is scheduled.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in the open interval (0, 1).
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct HistogramSpec {
  double q_min = 0.0;  // ps^-1, left edge of the first bin
  double dq = 0.0;     // ps^-1
  int nbins = 0;

  /// Bins aligned with a reconstructed heat distribution grid.
  static HistogramSpec aligned(double dq, int n);
};

struct McOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-11;
  int workers = 0;      // 0: hardware concurrency
  long chunk = 512;     // trajectories per reduction chunk (fixed for
                        // scheduling-independent output)
};

struct JumpTrajectoryStats {
  long n_trajectories = 0;
  std::uint64_t seed = 0;
  double mean_heat = 0.0;    // ps^-1, phonons -> dot
  double stderr_heat = 0.0;  // ps^-1
  double mean_jumps = 0.0;
  long trajectories_with_jumps = 0;
  long first_jump_absorption = 0;  // of those, how many start by absorbing

  HistogramSpec histogram;
  std::vector<double> bin_mass;  // sums to 1; out-of-range heat clamps into
                                 // the edge bins

  Eigen::Matrix2cd mean_final = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2d stderr_final_re = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d stderr_final_im = Eigen::Matrix2d::Zero();
};

/// Quantum-jump unraveling of the master equation: deterministic segments
/// under H_eff = H - i (gamma_a P_- + gamma_e P_+) (the non-Hermitian
/// drift matching the 2 gamma transfer rates), jumps located where the
/// squared norm crosses the drawn survival threshold, +Lambda recorded per
/// absorption and -Lambda per emission. Deterministic for a given seed.
JumpTrajectoryStats sample_trajectories(const EvolutionSpec& spec, long n,
                                        std::uint64_t seed,
                                        const HistogramSpec& hist,
                                        const McOptions& opt = {});

}  // namespace qdt
