/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/model_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdt {

Eigen::Matrix2d hamiltonian(const DriveFrame& frame) {
  Eigen::Matrix2d h;
  h << -0.5 * frame.delta, -0.5 * frame.omega,
       -0.5 * frame.omega,  0.5 * frame.delta;
  return h;
}

double dressed_splitting(const DriveFrame& frame) {
  return std::hypot(frame.delta, frame.omega);
}

DressedFrame dressed_frame(const DriveFrame& frame) {
  DressedFrame out;
  out.lambda = dressed_splitting(frame);
  // atan2(omega, delta) is continuous along any drive path with omega >= 0;
  // the omega = 0 endpoints fix the assignment by the sign of delta.
  out.theta = std::atan2(frame.omega, frame.delta);
  const double c = std::cos(0.5 * out.theta);
  const double s = std::sin(0.5 * out.theta);
  out.minus << c, s;
  out.plus << -s, c;
  if (out.lambda < lambda_eps) {
    out.degenerate = true;
    out.jump_up.setZero();
    out.jump_down.setZero();
    return out;
  }
  out.jump_up = out.plus * out.minus.transpose();
  out.jump_down = out.minus * out.plus.transpose();
  return out;
}

DressedPopulations dressed_populations(const DensityMatrix& rho,
                                       const DressedFrame& frame) {
  const Eigen::Vector2cd p = frame.plus.cast<std::complex<double>>();
  const Eigen::Vector2cd m = frame.minus.cast<std::complex<double>>();
  return {std::real(p.dot(rho * p)), std::real(m.dot(rho * m))};
}

double effective_temperature_rate(double p_plus, double p_minus,
                                  double lambda) {
  if (p_plus < 0.0 || p_minus < 0.0)
    throw std::invalid_argument("effective_temperature: negative population");
  if (p_plus + p_minus > 1.0 + 1e-9)
    throw std::invalid_argument("effective_temperature: populations sum > 1");
  if (p_plus == p_minus)
    return std::numeric_limits<double>::infinity();
  if (p_plus == 0.0 || p_minus == 0.0) return 0.0;
  return lambda / std::log(p_minus / p_plus);
}

double effective_temperature(double p_plus, double p_minus, double lambda) {
  return angular_rate_to_kelvin(
      effective_temperature_rate(p_plus, p_minus, lambda));
}

namespace {
double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  // Closed-form eigenvalues of the Hermitian part; clamp tiny negatives
  // from roundoff.
  const DensityMatrix h = 0.5 * (rho + rho.adjoint());
  const double tr = h.trace().real();
  const double diff = h(0, 0).real() - h(1, 1).real();
  const double r = std::sqrt(diff * diff + 4.0 * std::norm(h(0, 1)));
  const double l1 = 0.5 * (tr + r);
  const double l2 = 0.5 * (tr - r);
  return -(xlnx(std::max(l1, 0.0)) + xlnx(std::max(l2, 0.0)));
}

double binary_entropy(double p_a, double p_b) {
  return -(xlnx(std::max(p_a, 0.0)) + xlnx(std::max(p_b, 0.0)));
}

bool is_hermitian(const DensityMatrix& rho, double tol) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double trace_error(const DensityMatrix& rho) {
  return std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
}

double min_eigenvalue(const DensityMatrix& rho) {
  const DensityMatrix h = 0.5 * (rho + rho.adjoint());
  const double tr = h.trace().real();
  const double diff = h(0, 0).real() - h(1, 1).real();
  const double r = std::sqrt(diff * diff + 4.0 * std::norm(h(0, 1)));
  return 0.5 * (tr - r);
}

}  // namespace qdt
