/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace qdt {

double heat_current(const TrajectorySample& s) {
  // Transfer rates are 2 gamma with the paper-normalised dissipator.
  return s.lambda * 2.0 * (s.gamma_a * s.p_minus - s.gamma_e * s.p_plus);
}

double integrated_heat(const TrajectoryRecord& traj) {
  if (traj.samples.empty())
    throw std::invalid_argument("integrated_heat: empty trajectory");
  return traj.integrated_heat();
}

std::vector<TsRow> ts_trajectory(const TrajectoryRecord& traj) {
  std::vector<TsRow> rows;
  rows.reserve(traj.samples.size());
  for (const TrajectorySample& s : traj.samples) {
    TsRow r;
    r.t = s.t;
    r.t_eff_K = angular_rate_to_kelvin(s.t_eff_rate);
    r.entropy_vn = s.entropy;
    r.entropy_diag = binary_entropy(std::max(s.p_plus, 0.0),
                                    std::max(s.p_minus, 0.0));
    rows.push_back(r);
  }
  return rows;
}

double entropy_production(const TrajectoryRecord& traj, double hot_T_K) {
  if (traj.samples.size() < 2)
    throw std::invalid_argument("entropy_production: empty trajectory");
  if (!(hot_T_K > 0.0))
    throw std::invalid_argument("entropy_production: bath temperature <= 0");
  const double ds = traj.back().entropy - traj.front().entropy;
  const double q_abs = traj.integrated_heat();
  return ds - q_abs / kelvin_to_angular_rate(hot_T_K);
}

EngineEfficiency engine_efficiency(const TrajectoryRecord& traj,
                                   const EngineSpec& engine) {
  if (!(engine.cold_T_K > 0.0) || !(engine.cold_T_K < engine.hot_T_K))
    throw std::invalid_argument(
        "engine_efficiency: need 0 < cold_T < hot_T");
  EngineEfficiency out;
  out.carnot = 1.0 - engine.cold_T_K / engine.hot_T_K;
  out.heat_in = traj.integrated_heat();
  out.entropy_change = traj.back().entropy - traj.front().entropy;
  if (!(out.heat_in > 0.0)) throw NotHeatAbsorbing(out.heat_in);
  out.eta = 1.0 - kelvin_to_angular_rate(engine.cold_T_K) *
                      out.entropy_change / out.heat_in;
  out.eta_over_carnot = out.eta / out.carnot;
  return out;
}

}  // namespace qdt
