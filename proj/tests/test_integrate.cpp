/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <vector>

#include "qdt/integrate.hpp"

using namespace qdt;
using Vec2 = ode::StateVec<2>;
using Vec4 = ode::StateVec<4>;

namespace {

// Damped rotation; exact solution via the matrix exponential.
const Eigen::Matrix2d kA = [] {
  Eigen::Matrix2d a;
  a << -0.2, -3.0, 3.0, -0.1;
  return a;
}();

void linear_rhs(double, const Vec2& y, Vec2& dy) { dy = kA * y; }

Vec2 exact_at(double t, const Vec2& y0) {
  return (kA * t).exp() * y0;
}

}  // namespace

TEST_CASE("adaptive integration against the matrix exponential") {
  const Vec2 y0{1.0, 0.25};
  ode::Options opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-13;
  const Vec2 yf = ode::integrate<2>(linear_rhs, 0.0, 7.0, y0, opt);
  CHECK((yf - exact_at(7.0, y0)).norm() < 1e-8);
}

TEST_CASE("fixed-step convergence order is at least 4") {
  // Huge tolerances force every step to be accepted at max_step, turning
  // the controller into a fixed-step driver.
  const Vec2 y0{1.0, 0.25};
  std::vector<double> errs;
  for (double h : {0.1, 0.05, 0.025}) {
    ode::Options opt;
    opt.rel_tol = 1e-2;
    opt.abs_tol = 1e10;  // error norm ~ 0: every step accepted
    opt.max_step = h;
    opt.initial_step = h;
    const Vec2 yf = ode::integrate<2>(linear_rhs, 0.0, 2.0, y0, opt);
    errs.push_back((yf - exact_at(2.0, y0)).norm());
  }
  const double p1 = std::log2(errs[0] / errs[1]);
  const double p2 = std::log2(errs[1] / errs[2]);
  CHECK(p1 > 4.0);
  CHECK(p2 > 4.0);
}

TEST_CASE("tolerance tightening improves the result") {
  const Vec2 y0{0.3, -1.0};
  double prev_err = 1.0;
  for (double tol : {1e-5, 1e-7, 1e-9, 1e-11}) {
    ode::Options opt;
    opt.rel_tol = tol;
    opt.abs_tol = tol * 1e-3;
    const Vec2 yf = ode::integrate<2>(linear_rhs, 0.0, 5.0, y0, opt);
    const double err = (yf - exact_at(5.0, y0)).norm();
    CHECK(err < prev_err + 1e-15);
    prev_err = err;
  }
  CHECK(prev_err < 1e-9);
}

TEST_CASE("dense output samples the exact solution") {
  const Vec2 y0{1.0, 0.0};
  ode::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-12;
  std::vector<double> ts;
  for (int i = 0; i <= 50; ++i) ts.push_back(6.0 * i / 50.0);
  double max_err = 0.0;
  ode::integrate_sampled<2>(linear_rhs, 0.0, 6.0, y0, opt, ts,
                            [&](std::size_t, double t, const Vec2& y) {
                              max_err = std::max(
                                  max_err, (y - exact_at(t, y0)).norm());
                            });
  CHECK(max_err < 1e-7);
}

TEST_CASE("observer can stop inside a step") {
  const Vec2 y0{1.0, 0.0};
  ode::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-12;
  // Stop where the first component first drops below 0.5.
  auto observer = [&](const ode::DenseStep<2>& ds, double t_new,
                      const Vec2& y_new) {
    if (y_new[0] > 0.5) return ode::StepControl{};
    double lo = ds.t0, hi = t_new;
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
      const double mid = 0.5 * (lo + hi);
      (ds.eval(mid)[0] > 0.5 ? lo : hi) = mid;
    }
    return ode::StepControl{true, hi};
  };
  const auto [t_stop, y_stop] =
      ode::integrate_observed<2>(linear_rhs, 0.0, 10.0, y0, opt, observer);
  CHECK(y_stop[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(exact_at(t_stop, y0)[0] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("step-size underflow raises a diagnostic") {
  // y' = y^2 blows up at t = 1; the controller must fail loudly.
  auto rhs = [](double, const ode::StateVec<1>& y, ode::StateVec<1>& dy) {
    dy[0] = y[0] * y[0];
  };
  ode::Options opt;
  opt.rel_tol = 1e-8;
  opt.abs_tol = 1e-10;
  ode::StateVec<1> y0;
  y0 << 1.0;
  CHECK_THROWS_AS(ode::integrate<1>(rhs, 0.0, 2.0, y0, opt),
                  ode::IntegrationError);
}
