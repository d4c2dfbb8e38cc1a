/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qdt/propagator.hpp"
#include "qdt/steady.hpp"

using namespace qdt;
using Cplx = std::complex<double>;

namespace {

// Unchirped pulse whose center instant realises the frame (delta, omega).
ChirpedGaussianSpec frame_pulse(double delta, double omega) {
  ChirpedGaussianSpec spec;
  spec.tau0 = 2.0;
  spec.theta0 = omega * spec.tau0 * std::sqrt(2.0 * std::numbers::pi);
  spec.delta0 = delta;
  return spec;
}

DensityMatrix random_density(std::mt19937& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::Matrix2cd a;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) a(r, c) = Cplx{dist(gen), dist(gen)};
  DensityMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return rho;
}

Eigen::Vector4cd vec4(const DensityMatrix& rho) {
  Eigen::Vector4cd v;
  v << rho(0, 0), rho(1, 0), rho(0, 1), rho(1, 1);
  return v;
}

DensityMatrix unvec4(const Eigen::Vector4cd& v) {
  DensityMatrix rho;
  rho << v[0], v[2], v[1], v[3];
  return rho;
}

}  // namespace

TEST_CASE("lindblad_rhs structure") {
  EvolutionSpec spec;
  spec.pulse = frame_pulse(1.3, 0.9);
  spec.bath.temperature_K = 20.0;
  std::mt19937 gen(41);

  SUBCASE("traceless and Hermiticity-preserving") {
    for (int i = 0; i < 20; ++i) {
      const DensityMatrix rho = random_density(gen);
      const DensityMatrix d = lindblad_rhs(0.0, rho, spec);
      CHECK(std::abs(d.trace()) < 1e-14);
      CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }

  SUBCASE("zero rates leave the pure commutator") {
    EvolutionSpec closed = spec;
    closed.bath.spectral_density.amplitude = 0.0;
    const DensityMatrix rho = random_density(gen);
    const DensityMatrix d = lindblad_rhs(0.0, rho, closed);
    const Eigen::Matrix2cd h =
        hamiltonian(drive_at(closed.pulse, 0.0)).cast<Cplx>();
    const DensityMatrix expected = Cplx(0, -1) * (h * rho - rho * h);
    CHECK((d - expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(d.trace()) < 1e-15);
  }

  SUBCASE("detailed-balance fixed point kills the generator") {
    const DriveFrame drive = drive_at(spec.pulse, 0.0);
    const DressedFrame f = dressed_frame(drive);
    const PhononRates g = phonon_rates(drive, spec.bath);
    // rho diagonal in the dressed basis with gamma_a p- = gamma_e p+.
    const double ratio = g.absorption / g.emission;
    const double pm = 1.0 / (1.0 + ratio), pp = ratio / (1.0 + ratio);
    const DensityMatrix rho =
        (pp * f.plus * f.plus.transpose() + pm * f.minus * f.minus.transpose())
            .cast<Cplx>();
    CHECK(lindblad_rhs(0.0, rho, spec).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("matches the dense superoperator exponential") {
    // Frozen-frame generator via the CW Liouvillian with gamma_sp = 0.
    CWDriveSpec cw;
    cw.delta = 1.3;
    cw.omega = 0.9;
    cw.bath = spec.bath;
    cw.gamma_sp = 0.0;
    const Eigen::Matrix4cd gen4 = liouvillian(cw);
    const double dt = 1e-6;
    const Eigen::Matrix4cd prop = (gen4 * dt).exp();
    for (int i = 0; i < 5; ++i) {
      const DensityMatrix rho = random_density(gen);
      const DensityMatrix finite =
          (unvec4(prop * vec4(rho)) - rho) / dt;
      const DensityMatrix direct = lindblad_rhs(0.0, rho, spec);
      CHECK((finite - direct).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("counting_rhs") {
  EvolutionSpec spec;
  spec.pulse = frame_pulse(0.8, 1.7);
  spec.bath.temperature_K = 20.0;
  std::mt19937 gen(43);

  SUBCASE("u = 0 reproduces lindblad_rhs bitwise") {
    const DensityMatrix rho = random_density(gen);
    const DensityMatrix a = lindblad_rhs(0.3, rho, spec);
    const DensityMatrix b = counting_rhs(0.3, rho, spec, 0.0);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("zero rates make the derivative u-independent") {
    EvolutionSpec closed = spec;
    closed.bath.spectral_density.amplitude = 0.0;
    const DensityMatrix rho = random_density(gen);
    const DensityMatrix a = counting_rhs(0.0, rho, closed, 0.0);
    const DensityMatrix b = counting_rhs(0.0, rho, closed, 3.7);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-16);
  }

  SUBCASE("trace growth formula for dressed-diagonal states") {
    const DriveFrame drive = drive_at(spec.pulse, 0.0);
    const DressedFrame f = dressed_frame(drive);
    const PhononRates g = phonon_rates(drive, spec.bath);
    const double pp = 0.3, pm = 0.7;
    const DensityMatrix rho =
        (pp * f.plus * f.plus.transpose() + pm * f.minus * f.minus.transpose())
            .cast<Cplx>();
    for (double u : {-2.0, -0.3, 0.7, 5.0}) {
      const Cplx tr = counting_rhs(0.0, rho, spec, u).trace();
      const Cplx expected =
          (std::polar(1.0, -u * f.lambda) - 1.0) * 2.0 * g.absorption * pm +
          (std::polar(1.0, +u * f.lambda) - 1.0) * 2.0 * g.emission * pp;
      CHECK(std::abs(tr - expected) < 1e-12);
    }
  }
}

TEST_CASE("evolve basics") {
  SUBCASE("no drive: state is frozen") {
    EvolutionSpec spec;
    spec.pulse = {2.0, 0.0, 0.0, 1.0, 0.0};  // theta0 = 0
    spec.bath.temperature_K = 20.0;
    const TrajectoryRecord rec = evolve(spec);
    for (const auto& s : rec.samples) {
      CHECK(std::abs(s.rho(0, 0).real() - 1.0) < 1e-12);
      CHECK(std::abs(s.rho(1, 1)) < 1e-12);
      CHECK(s.heat_cumulative == doctest::Approx(0.0).epsilon(1e-15));
    }
  }

  SUBCASE("resonant pi pulse swaps populations without dissipation") {
    const double omega = 0.8;
    BathSpec closed;
    closed.temperature_K = 0.0;
    closed.spectral_density.amplitude = 0.0;
    const double duration = std::numbers::pi / omega;
    const TrajectoryRecord rec = evolve_profile(
        [omega](double) {
          return DriveFrame{0.0, omega};
        },
        closed, 0.0, duration, ground_state(), 1e-12, 1e-14);
    CHECK(rec.back().rho(1, 1).real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(rec.back().rho(0, 0)) < 1e-6);
  }

  SUBCASE("adiabatic rapid passage inverts the population at T = 0") {
    EvolutionSpec spec;
    spec.pulse = {2.0, 6.0 * std::numbers::pi, 20.0, 0.0, 0.0};
    spec.bath.temperature_K = 0.0;
    const TrajectoryRecord rec = evolve(spec);
    CHECK(rec.back().rho(1, 1).real() > 0.99);
  }

  SUBCASE("trajectory preserves density-matrix structure") {
    EvolutionSpec spec;
    spec.pulse = {0.5, 9.0 * std::numbers::pi, 10.0, 0.0, 0.0};
    spec.bath.temperature_K = 20.0;
    const TrajectoryRecord rec = evolve(spec);
    for (const auto& s : rec.samples) {
      CHECK(trace_error(s.rho) < 1e-9);
      CHECK(min_eigenvalue(s.rho) > -1e-9);
      CHECK(is_hermitian(s.rho, 1e-12));
    }
    // Monotone sample times spanning the window.
    for (std::size_t i = 1; i < rec.samples.size(); ++i)
      CHECK(rec.samples[i].t > rec.samples[i - 1].t);
  }

  SUBCASE("tolerance halving leaves the final population stable") {
    EvolutionSpec spec;
    spec.pulse = {1.0, 5.0, 8.0, -1.0, 0.0};
    spec.bath.temperature_K = 20.0;
    spec.rel_tol = 2e-10;
    spec.abs_tol = 2e-13;
    const double p1 = evolve(spec).back().rho(1, 1).real();
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-13;
    const double p2 = evolve(spec).back().rho(1, 1).real();
    CHECK(std::abs(p1 - p2) < 1e-6);
  }
}

TEST_CASE("evolve_counting") {
  EvolutionSpec spec;
  spec.pulse = {1.0, 4.0 * std::numbers::pi, 5.0, 0.0, 0.0};
  spec.bath.temperature_K = 20.0;

  SUBCASE("G(0) = 1") {
    const Cplx g0 = evolve_counting(spec, ground_state(), 0.0);
    CHECK(std::abs(g0 - 1.0) < 1e-9);
  }

  SUBCASE("closed system: G = 1 for all u") {
    EvolutionSpec closed = spec;
    closed.bath.spectral_density.amplitude = 0.0;
    for (double u : {-3.0, 0.4, 11.0})
      CHECK(std::abs(evolve_counting(closed, ground_state(), u) - 1.0) < 1e-9);
  }

  SUBCASE("|G| <= 1 and Hermitian symmetry") {
    for (double u : {0.2, 0.9, 2.7, 6.0}) {
      const Cplx gp = evolve_counting(spec, ground_state(), u);
      const Cplx gm = evolve_counting(spec, ground_state(), -u);
      CHECK(std::abs(gp) <= 1.0 + 1e-9);
      CHECK(std::abs(gm - std::conj(gp)) < 1e-8);
    }
  }
}
