/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <vector>

#include "qdt/propagator.hpp"

namespace qdt {

/// Heat-engine stroke closed by a reversible process against a cold bath.
struct EngineSpec {
  double hot_T_K = 20.0;
  double cold_T_K = 2.7;
};

class NotHeatAbsorbing : public std::runtime_error {
 public:
  explicit NotHeatAbsorbing(double q)
      : std::runtime_error("engine_efficiency: stroke absorbs no heat (Q_h = " +
                           std::to_string(q) + " ps^-1)") {}
};

/// Instantaneous heat current, ps^-2, phonons -> dot positive. Equals the
/// time derivative of the counting-statistics first moment.
double heat_current(const TrajectorySample& s);

/// Total heat absorbed by the dot over the trajectory (ps^-1).
double integrated_heat(const TrajectoryRecord& traj);

/// Temperature-entropy rows. Emits both the von Neumann entropy of rho and
/// the dressed-population (diagonal) entropy; efficiency bookkeeping uses
/// the von Neumann value.
struct TsRow {
  double t = 0.0;
  double t_eff_K = 0.0;      // signed; +inf sentinel when p+ == p-
  double entropy_vn = 0.0;   // k_B units
  double entropy_diag = 0.0; // k_B units, from (p+, p-)
};
std::vector<TsRow> ts_trajectory(const TrajectoryRecord& traj);

/// Entropy generated by the stroke: Delta S_vN - Q_absorbed / T_h, in k_B
/// units (temperature converted to ps^-1 internally). Nonnegative for this
/// dissipator up to integration error.
double entropy_production(const TrajectoryRecord& traj, double hot_T_K);

struct EngineEfficiency {
  double eta = 0.0;
  double eta_over_carnot = 0.0;
  double carnot = 0.0;
  double heat_in = 0.0;         // ps^-1
  double entropy_change = 0.0;  // k_B units
};

/// eta = 1 - T_c dS / Q_h for the reversible closing stroke; throws
/// NotHeatAbsorbing when Q_h <= 0.
EngineEfficiency engine_efficiency(const TrajectoryRecord& traj,
                                   const EngineSpec& engine);

}  // namespace qdt
