/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/steady.hpp"

#include <cmath>
#include <complex>

#include "qdt/constants.hpp"
#include "qdt/parallel.hpp"

namespace qdt {

namespace {

using Cplx = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

// vec(A rho B) = (B^T kron A) vec(rho), column-major stacking.
Matrix4c kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// -gamma [ (I kron O^dag O) + ((O^dag O)^T kron I) - 2 (conj(O) kron O) ]
Matrix4c dissipator(const Eigen::Matrix2cd& op, double gamma) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd oo = op.adjoint() * op;
  return -gamma * (kron2(id, oo) + kron2(oo.transpose(), id) -
                   2.0 * kron2(op.conjugate(), op));
}

Eigen::Vector4cd vec(const DensityMatrix& rho) {
  Eigen::Vector4cd v;
  v << rho(0, 0), rho(1, 0), rho(0, 1), rho(1, 1);
  return v;
}

DensityMatrix unvec(const Eigen::Vector4cd& v) {
  DensityMatrix rho;
  rho << v[0], v[2], v[1], v[3];
  return rho;
}

}  // namespace

Matrix4c liouvillian(const CWDriveSpec& spec) {
  if (spec.gamma_sp < 0.0)
    throw std::invalid_argument("liouvillian: gamma_sp < 0");
  const DriveFrame drive{spec.delta, spec.omega};
  const Eigen::Matrix2cd h = hamiltonian(drive).cast<Cplx>();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Matrix4c gen = Cplx(0.0, -1.0) * (kron2(id, h) - kron2(h.transpose(), id));

  const DressedFrame f = dressed_frame(drive);
  const PhononRates g = phonon_rates(drive, spec.bath);
  if (!f.degenerate && (g.absorption > 0.0 || g.emission > 0.0)) {
    gen += dissipator(f.jump_up.cast<Cplx>(), g.absorption);
    gen += dissipator(f.jump_down.cast<Cplx>(), g.emission);
  }
  if (spec.gamma_sp > 0.0) {
    Eigen::Matrix2cd lower = Eigen::Matrix2cd::Zero();
    lower(0, 1) = 1.0;  // |0><1|
    gen += dissipator(lower, spec.gamma_sp);
  }
  return gen;
}

DensityMatrix steady_state(const CWDriveSpec& spec) {
  const Matrix4c gen = liouvillian(spec);

  // Uniqueness: the generator must have exactly one vanishing singular
  // value relative to its scale.
  Eigen::JacobiSVD<Matrix4c> svd(gen);
  const auto& sv = svd.singularValues();
  const double scale = std::max(sv[0], 1e-300);
  if (sv[3] > 1e-10 * scale || sv[2] <= 1e-10 * scale)
    throw NoUniqueSteadyState(
        "steady_state: generator null space is not one-dimensional");

  // Real-expanded least squares with the trace row appended.
  Eigen::Matrix<double, 8, 8> lr;
  lr.block<4, 4>(0, 0) = gen.real();
  lr.block<4, 4>(0, 4) = -gen.imag();
  lr.block<4, 4>(4, 0) = gen.imag();
  lr.block<4, 4>(4, 4) = gen.real();

  Eigen::Matrix<double, 10, 8> sys = Eigen::Matrix<double, 10, 8>::Zero();
  sys.block<8, 8>(0, 0) = lr;
  sys(8, 0) = 1.0;  // Re r00 + Re r11 = 1
  sys(8, 3) = 1.0;
  sys(9, 4) = 1.0;  // Im r00 + Im r11 = 0
  sys(9, 7) = 1.0;
  Eigen::Matrix<double, 10, 1> rhs = Eigen::Matrix<double, 10, 1>::Zero();
  rhs[8] = 1.0;

  const Eigen::Matrix<double, 8, 1> sol =
      sys.colPivHouseholderQr().solve(rhs);
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v[i] = Cplx{sol[i], sol[i + 4]};
  DensityMatrix rho = unvec(v);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return rho;
}

double steady_residual(const CWDriveSpec& spec, const DensityMatrix& rho) {
  return (liouvillian(spec) * vec(rho)).norm();
}

double cooling_power(const CWDriveSpec& spec) {
  const DensityMatrix rho = steady_state(spec);
  const DriveFrame drive{spec.delta, spec.omega};
  const DressedFrame f = dressed_frame(drive);
  const PhononRates g = phonon_rates(drive, spec.bath);
  const DressedPopulations p = dressed_populations(rho, f);
  return f.lambda * 2.0 * (g.absorption * p.minus - g.emission * p.plus);
}

double absorption_heating(double omega, const AbsorptionModel& model) {
  if (!(model.dipole_debye > 0.0) ||
      !(model.density_over_absorption_m2 > 0.0) ||
      !(model.refractive_index > 0.0))
    throw std::invalid_argument("absorption_heating: fields must be positive");
  namespace k = constants;
  const double d = model.dipole_debye * k::debye_C_m;          // C m
  const double omega_si = omega * 1e12;                        // s^-1
  const double field = k::hbar_J_s * omega_si / d;             // V/m
  const double intensity = 0.5 * k::speed_of_light_m_per_s *
                           k::vacuum_permittivity_F_per_m *
                           model.refractive_index * field * field;
  return intensity / model.density_over_absorption_m2;         // W
}

std::vector<CoolingMapRow> net_cooling_map(const CoolingMapSpec& grid,
                                           const CWDriveSpec& base,
                                           const AbsorptionModel& model) {
  if (grid.n_delta < 1 || grid.n_omega < 1)
    throw std::invalid_argument("net_cooling_map: empty grid");
  const long total = static_cast<long>(grid.n_delta) * grid.n_omega;
  std::vector<CoolingMapRow> rows(total);
  parallel_chunks(total, 64, grid.workers, [&](long begin, long end) {
    for (long idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx / grid.n_omega);
      const int j = static_cast<int>(idx % grid.n_omega);
      CWDriveSpec spec = base;
      spec.delta = grid.n_delta == 1
                       ? grid.delta_min
                       : grid.delta_min + (grid.delta_max - grid.delta_min) *
                                              i / (grid.n_delta - 1);
      spec.omega = grid.n_omega == 1
                       ? grid.omega_min
                       : grid.omega_min + (grid.omega_max - grid.omega_min) *
                                              j / (grid.n_omega - 1);
      CoolingMapRow& r = rows[idx];
      r.delta = spec.delta;
      r.omega = spec.omega;
      r.cooling_W = cooling_power(spec) * constants::ps_inv2_to_watt;
      r.heating_W = absorption_heating(spec.omega, model);
      r.net_W = r.cooling_W - r.heating_W;
      r.net_cooling = r.net_W > 0.0;
    }
  });
  return rows;
}

}  // namespace qdt
