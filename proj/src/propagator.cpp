/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/propagator.hpp"

#include <numbers>
#include <stdexcept>

#include "qdt/integrate.hpp"

namespace qdt {

namespace {

using Vec8 = ode::StateVec<8>;
using Vec9 = ode::StateVec<9>;
using Cplx = std::complex<double>;

// Column-major packing: y = (Re r00, Re r10, Re r01, Re r11,
//                            Im r00, Im r10, Im r01, Im r11).
template <class Vec>
DensityMatrix unpack(const Vec& y) {
  DensityMatrix r;
  r(0, 0) = {y[0], y[4]};
  r(1, 0) = {y[1], y[5]};
  r(0, 1) = {y[2], y[6]};
  r(1, 1) = {y[3], y[7]};
  return r;
}

template <class Vec>
void pack(const DensityMatrix& r, Vec& y) {
  y[0] = r(0, 0).real();
  y[1] = r(1, 0).real();
  y[2] = r(0, 1).real();
  y[3] = r(1, 1).real();
  y[4] = r(0, 0).imag();
  y[5] = r(1, 0).imag();
  y[6] = r(0, 1).imag();
  y[7] = r(1, 1).imag();
}

struct InstantFrame {
  DriveFrame drive;
  DressedFrame dressed;
  PhononRates rates;
};

InstantFrame instant_frame(const DriveFrame& drive, const BathSpec& bath) {
  return {drive, dressed_frame(drive), phonon_rates(drive, bath)};
}

// Master-equation derivative for one instantaneous frame. The counting
// phases multiply the sandwich terms; (1, 1) recovers the plain equation.
DensityMatrix rhs_for_frame(const DensityMatrix& rho, const InstantFrame& f,
                            Cplx phase_up, Cplx phase_down) {
  const Eigen::Matrix2d h = hamiltonian(f.drive);
  DensityMatrix out = Cplx(0.0, -1.0) * (h * rho - rho * h);
  if (f.rates.absorption > 0.0 || f.rates.emission > 0.0) {
    const Eigen::Matrix2d pm = f.dressed.minus * f.dressed.minus.transpose();
    const Eigen::Matrix2d pp = f.dressed.plus * f.dressed.plus.transpose();
    const Eigen::Matrix2d& up = f.dressed.jump_up;
    const Eigen::Matrix2d& dn = f.dressed.jump_down;
    out -= f.rates.absorption *
           (pm * rho + rho * pm -
            2.0 * phase_up * (up * rho * up.transpose()));
    out -= f.rates.emission *
           (pp * rho + rho * pp -
            2.0 * phase_down * (dn * rho * dn.transpose()));
  }
  return out;
}

// Heat current into the dot from the phonons, ps^-2. The dissipator's
// population transfer rates are 2 gamma (paper-normalised Lindblad form),
// hence the factor two; this is the current whose integral matches the
// counting-statistics first moment.
double heat_current_rate(const InstantFrame& f, const DensityMatrix& rho) {
  const DressedPopulations p = dressed_populations(rho, f.dressed);
  return f.dressed.lambda * 2.0 *
         (f.rates.absorption * p.minus - f.rates.emission * p.plus);
}

struct FastPulse {
  double delta0, alpha, peak, tau, t_center;

  DriveFrame operator()(double t) const {
    const double x = (t - t_center) / tau;
    return {delta0 - alpha * (t - t_center), peak * std::exp(-0.5 * x * x)};
  }
};

FastPulse fast_pulse(const ChirpedGaussianSpec& spec) {
  const ChirpedPulseParams p = chirp_transform(spec);
  return {spec.delta0, p.alpha, p.peak_rabi, p.tau, spec.t_center};
}

void validate_tolerances(double rel_tol, double abs_tol) {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2) ||
      !(abs_tol > 0.0 && abs_tol <= 1e-2))
    throw std::invalid_argument("evolve: tolerances must lie in (0, 1e-2]");
}

TrajectorySample make_sample(double t, const DensityMatrix& rho,
                             const InstantFrame& f, double cumulative_heat) {
  TrajectorySample s;
  s.t = t;
  s.rho = rho;
  const DressedPopulations p = dressed_populations(rho, f.dressed);
  s.p_plus = p.plus;
  s.p_minus = p.minus;
  s.lambda = f.dressed.lambda;
  s.omega = f.drive.omega;
  s.delta = f.drive.delta;
  s.gamma_a = f.rates.absorption;
  s.gamma_e = f.rates.emission;
  s.heat_current = heat_current_rate(f, rho);
  s.heat_cumulative = cumulative_heat;
  s.entropy = von_neumann_entropy(rho);
  // Populations can dip a hair below zero from integration roundoff.
  s.t_eff_rate = effective_temperature_rate(std::max(p.plus, 0.0),
                                            std::max(p.minus, 0.0), s.lambda);
  return s;
}

template <class Drive>
TrajectoryRecord evolve_impl(const Drive& drive, const BathSpec& bath,
                             double t0, double t1, const DensityMatrix& rho0,
                             double rel_tol, double abs_tol, double max_step,
                             int n_samples) {
  validate_tolerances(rel_tol, abs_tol);
  if (!(t1 > t0)) throw std::invalid_argument("evolve: empty time window");
  if (n_samples < 2) throw std::invalid_argument("evolve: n_samples < 2");

  ode::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = abs_tol;
  if (max_step > 0.0) opt.max_step = max_step;

  auto rhs = [&](double t, const Vec9& y, Vec9& dy) {
    const InstantFrame f = instant_frame(drive(t), bath);
    const DensityMatrix rho = unpack(y);
    const DensityMatrix d = rhs_for_frame(rho, f, 1.0, 1.0);
    pack(d, dy);
    dy[8] = heat_current_rate(f, rho);
  };

  Vec9 y0;
  pack(rho0, y0);
  y0[8] = 0.0;

  std::vector<double> ts(n_samples);
  for (int i = 0; i < n_samples; ++i)
    ts[i] = t0 + (t1 - t0) * i / (n_samples - 1);

  TrajectoryRecord rec;
  rec.bath_temperature_K = bath.temperature_K;
  rec.samples.resize(n_samples);
  ode::integrate_sampled<9>(
      rhs, t0, t1, y0, opt, ts, [&](std::size_t i, double t, const Vec9& y) {
        const DensityMatrix rho = unpack(y);
        if (trace_error(rho) > 1e-6 || min_eigenvalue(rho) < -1e-6)
          throw ode::IntegrationError(
              "evolve: propagated state lost density-matrix structure", t);
        rec.samples[i] = make_sample(t, rho, instant_frame(drive(t), bath),
                                     y[8]);
      });
  return rec;
}

}  // namespace

std::pair<double, double> EvolutionSpec::window() const {
  const ChirpedPulseParams p = chirp_transform(pulse);
  const double a = std::isnan(t_start) ? pulse.t_center - 6.0 * p.tau : t_start;
  const double b = std::isnan(t_end) ? pulse.t_center + 6.0 * p.tau : t_end;
  if (!(b > a)) throw std::invalid_argument("EvolutionSpec: t_start >= t_end");
  return {a, b};
}

double EvolutionSpec::resolved_max_step() const {
  if (max_step > 0.0) return max_step;
  return chirp_transform(pulse).tau / 100.0;
}

DensityMatrix lindblad_rhs(double t, const DensityMatrix& rho,
                           const EvolutionSpec& spec) {
  const InstantFrame f = instant_frame(drive_at(spec.pulse, t), spec.bath);
  return rhs_for_frame(rho, f, 1.0, 1.0);
}

DensityMatrix counting_rhs(double t, const DensityMatrix& rho,
                           const EvolutionSpec& spec, double u) {
  const InstantFrame f = instant_frame(drive_at(spec.pulse, t), spec.bath);
  const double phi = u * f.dressed.lambda;
  return rhs_for_frame(rho, f, std::polar(1.0, -phi), std::polar(1.0, phi));
}

TrajectoryRecord evolve(const EvolutionSpec& spec, const DensityMatrix& rho0) {
  const auto [t0, t1] = spec.window();
  return evolve_impl(fast_pulse(spec.pulse), spec.bath, t0, t1, rho0,
                     spec.rel_tol, spec.abs_tol, spec.resolved_max_step(),
                     spec.n_samples);
}

std::complex<double> evolve_counting(const EvolutionSpec& spec,
                                     const DensityMatrix& rho0, double u) {
  validate_tolerances(spec.rel_tol, spec.abs_tol);
  const auto [t0, t1] = spec.window();
  const FastPulse drive = fast_pulse(spec.pulse);
  const BathSpec& bath = spec.bath;

  ode::Options opt;
  opt.rel_tol = spec.rel_tol;
  opt.abs_tol = spec.abs_tol;
  opt.max_step = spec.resolved_max_step();

  auto rhs = [&](double t, const Vec8& y, Vec8& dy) {
    const InstantFrame f = instant_frame(drive(t), bath);
    const double phi = u * f.dressed.lambda;
    const DensityMatrix d = rhs_for_frame(unpack(y), f,
                                          std::polar(1.0, -phi),
                                          std::polar(1.0, phi));
    pack(d, dy);
  };

  Vec8 y0;
  pack(rho0, y0);
  const Vec8 yf = ode::integrate<8>(rhs, t0, t1, y0, opt);
  return Cplx{yf[0] + yf[3], yf[4] + yf[7]};
}

TrajectoryRecord evolve_profile(const DriveProfile& drive, const BathSpec& bath,
                                double t_start, double t_end,
                                const DensityMatrix& rho0, double rel_tol,
                                double abs_tol, double max_step,
                                int n_samples) {
  return evolve_impl(drive, bath, t_start, t_end, rho0, rel_tol, abs_tol,
                     max_step, n_samples);
}

}  // namespace qdt
