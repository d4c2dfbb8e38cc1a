/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qdt/constants.hpp"

namespace qdt {

using DensityMatrix = Eigen::Matrix2cd;  // basis {|0>, |1>}

/// Instantaneous rotating-frame drive parameters, both in ps^-1.
/// delta = E_x - omega_laser(t); omega is the Rabi frequency (>= 0).
struct DriveFrame {
  double delta = 0.0;
  double omega = 0.0;
};

/// Rotating-frame Hamiltonian delta*s_z - omega*s_x with the Hermitian
/// pseudospin convention s_z = (|1><1|-|0><0|)/2, s_x = (|1><0|+|0><1|)/2.
/// Real symmetric in this basis.
Eigen::Matrix2d hamiltonian(const DriveFrame& frame);

/// Splittings below this are treated as degenerate (ps^-1).
inline constexpr double lambda_eps = 1e-9;

/// Dressed-state frame of the driven two-level system. Eigenvectors are
/// real unit 2-vectors, continuous in (delta, omega) for omega >= 0:
///   |-> = (cos(theta/2), sin(theta/2)),  |+> = (-sin(theta/2), cos(theta/2))
/// with theta = atan2(omega, delta) in [0, pi]. H |+-> = +-(lambda/2)|+->.
struct DressedFrame {
  double lambda = 0.0;  // sqrt(delta^2 + omega^2), ps^-1
  double theta = 0.0;   // mixing angle, radians
  Eigen::Vector2d plus{0.0, 1.0};
  Eigen::Vector2d minus{1.0, 0.0};
  Eigen::Matrix2d jump_up = Eigen::Matrix2d::Zero();    // |+><-|
  Eigen::Matrix2d jump_down = Eigen::Matrix2d::Zero();  // |-><+|
  bool degenerate = false;  // lambda < lambda_eps; jump operators zeroed
};

/// sqrt(delta^2 + omega^2).
double dressed_splitting(const DriveFrame& frame);

DressedFrame dressed_frame(const DriveFrame& frame);

/// Populations of the dressed states for a given state and frame.
struct DressedPopulations {
  double plus = 0.0;
  double minus = 0.0;
};
DressedPopulations dressed_populations(const DensityMatrix& rho,
                                       const DressedFrame& frame);

/// Effective temperature from p_plus/p_minus = exp(-lambda / T), returned in
/// the internal ps^-1 units (k_B T / hbar). Negative under population
/// inversion; +infinity sentinel when p_plus == p_minus; 0 when either
/// population vanishes.
double effective_temperature_rate(double p_plus, double p_minus,
                                  double lambda);

/// Same, converted to kelvin.
double effective_temperature(double p_plus, double p_minus, double lambda);

/// -sum lambda_i ln lambda_i over the eigenvalues of rho, in units of k_B.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of the two-outcome distribution (p, 1-p based on the two
/// arguments, normalised by their sum is NOT applied; pass probabilities).
double binary_entropy(double p_a, double p_b);

// Validation helpers (used by tests and by evolve postcondition checks).
bool is_hermitian(const DensityMatrix& rho, double tol = 1e-12);
double trace_error(const DensityMatrix& rho);        // |tr(rho) - 1|
double min_eigenvalue(const DensityMatrix& rho);     // of (rho+rho^dag)/2

}  // namespace qdt
