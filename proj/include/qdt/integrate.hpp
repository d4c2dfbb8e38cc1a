/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

// Embedded Dormand-Prince 5(4) integrator with PI step-size control and the
// classic fourth-order continuous extension. Header-only and templated on
// the (fixed, small) state dimension; the solver states here are 4-9 reals.

namespace qdt::ode {

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0: choose automatically
  long max_steps = 50'000'000;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t)
      : std::runtime_error(what + " at t = " + std::to_string(t)), t_(t) {}
  double where() const { return t_; }

 private:
  double t_;
};

template <int N>
using StateVec = Eigen::Matrix<double, N, 1>;

/// One accepted step with its dense-output coefficients. eval(t) is valid
/// for t in [t0, t0 + h].
template <int N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  Eigen::Matrix<double, N, 5> cont;

  StateVec<N> eval(double t) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    return cont.col(0) +
           s * (cont.col(1) + s1 * (cont.col(2) + s * (cont.col(3) + s1 * cont.col(4))));
  }
};

/// Observer verdict after each accepted step.
struct StepControl {
  bool stop = false;
  double stop_at = 0.0;  // time within the step to evaluate the final state
};

namespace detail {
// Dormand-Prince coefficients (5th-order pairs with embedded 4th order).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                        c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                        e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;
}  // namespace detail

/// Integrate dy/dt = rhs(t, y) from t0 to t1 (t1 > t0). After every accepted
/// step the observer is called with the dense step, the step end time and
/// state; it may stop the integration at any time inside the step.
/// Returns the final (t, y).
template <int N, class Rhs, class Observer>
std::pair<double, StateVec<N>> integrate_observed(Rhs&& rhs, double t0,
                                                  double t1, StateVec<N> y,
                                                  const Options& opt,
                                                  Observer&& observe) {
  using Vec = StateVec<N>;
  namespace d = detail;
  if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must exceed t0");
  if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0))
    throw std::invalid_argument("integrate: tolerances must be positive");

  double t = t0;
  Vec k1;
  rhs(t, y, k1);

  auto error_norm = [&](const Vec& err, const Vec& y0, const Vec& y1) {
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sk =
          opt.abs_tol + opt.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const double q = err[i] / sk;
      acc += q * q;
    }
    return std::sqrt(acc / N);
  };

  // Starting step: Hairer's two-probe estimate.
  double h = opt.initial_step;
  if (h <= 0.0) {
    double d0 = 0.0, d1n = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sk = opt.abs_tol + opt.rel_tol * std::abs(y[i]);
      d0 += (y[i] / sk) * (y[i] / sk);
      d1n += (k1[i] / sk) * (k1[i] / sk);
    }
    d0 = std::sqrt(d0 / N);
    d1n = std::sqrt(d1n / N);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, t1 - t0);
    Vec y1p = y + h0 * k1;
    Vec f1;
    rhs(t + h0, y1p, f1);
    double d2 = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sk = opt.abs_tol + opt.rel_tol * std::abs(y[i]);
      const double q = (f1[i] - k1[i]) / sk;
      d2 += q * q;
    }
    d2 = std::sqrt(d2 / N) / h0;
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                  : std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, opt.max_step, t1 - t0});
  }
  h = std::min(h, opt.max_step);

  // PI controller state (Hairer dopri5 defaults).
  constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
  constexpr double fac_shrink = 5.0, fac_grow = 0.1;  // 1/min, 1/max scale
  double facold = 1e-4;
  bool rejected = false;

  Vec k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;
  long nstep = 0;
  while (t < t1) {
    if (++nstep > opt.max_steps)
      throw IntegrationError("integrate: step budget exhausted", t);
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegrationError("integrate: step size underflow", t);

    ytmp = y + h * (d::a21 * k1);
    rhs(t + d::c2 * h, ytmp, k2);
    ytmp = y + h * (d::a31 * k1 + d::a32 * k2);
    rhs(t + d::c3 * h, ytmp, k3);
    ytmp = y + h * (d::a41 * k1 + d::a42 * k2 + d::a43 * k3);
    rhs(t + d::c4 * h, ytmp, k4);
    ytmp = y + h * (d::a51 * k1 + d::a52 * k2 + d::a53 * k3 + d::a54 * k4);
    rhs(t + d::c5 * h, ytmp, k5);
    ytmp = y + h * (d::a61 * k1 + d::a62 * k2 + d::a63 * k3 + d::a64 * k4 +
                    d::a65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (d::b1 * k1 + d::b3 * k3 + d::b4 * k4 + d::b5 * k5 +
                    d::b6 * k6);
    rhs(t + h, ynew, k7);  // FSAL
    yerr = h * (d::e1 * k1 + d::e3 * k3 + d::e4 * k4 + d::e5 * k5 +
                d::e6 * k6 + d::e7 * k7);

    const double err = error_norm(yerr, y, ynew);
    if (err <= 1.0) {
      // Accept; build the dense output before advancing.
      DenseStep<N> ds;
      ds.t0 = t;
      ds.h = h;
      const Vec ydiff = ynew - y;
      const Vec bspl = h * k1 - ydiff;
      ds.cont.col(0) = y;
      ds.cont.col(1) = ydiff;
      ds.cont.col(2) = bspl;
      ds.cont.col(3) = ydiff - h * k7 - bspl;
      ds.cont.col(4) = h * (d::d1 * k1 + d::d3 * k3 + d::d4 * k4 +
                            d::d5 * k5 + d::d6 * k6 + d::d7 * k7);

      const double t_new = t + h;
      const StepControl ctl = observe(ds, t_new, ynew);
      if (ctl.stop) return {ctl.stop_at, ds.eval(ctl.stop_at)};

      const double fac11 = std::pow(std::max(err, 1e-30), expo1);
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(fac_grow, std::min(fac_shrink, fac / safe));
      double hnew = h / fac;
      if (rejected) hnew = std::min(hnew, h);
      facold = std::max(err, 1e-4);
      rejected = false;

      t = last ? t1 : t_new;  // land on the endpoint exactly
      y = ynew;
      k1 = k7;
      if (last) break;
      h = std::min(hnew, opt.max_step);
    } else {
      const double fac11 = std::pow(err, expo1);
      h /= std::min(fac_shrink, fac11 / safe);
      rejected = true;
    }
  }
  return {t, y};
}

/// Convenience wrapper without early stopping.
template <int N, class Rhs>
StateVec<N> integrate(Rhs&& rhs, double t0, double t1, StateVec<N> y0,
                      const Options& opt) {
  auto noop = [](const DenseStep<N>&, double, const StateVec<N>&) {
    return StepControl{};
  };
  return integrate_observed<N>(std::forward<Rhs>(rhs), t0, t1, std::move(y0),
                               opt, noop)
      .second;
}

/// Integrate and evaluate the dense interpolant at the (ascending) sample
/// times, which must lie within [t0, t1]. on_sample(i, t_i, y_i).
template <int N, class Rhs, class OnSample>
StateVec<N> integrate_sampled(Rhs&& rhs, double t0, double t1, StateVec<N> y0,
                              const Options& opt, const std::vector<double>& ts,
                              OnSample&& on_sample) {
  std::size_t next = 0;
  while (next < ts.size() && ts[next] <= t0) {
    on_sample(next, t0, y0);
    ++next;
  }
  auto observer = [&](const DenseStep<N>& ds, double t_new,
                      const StateVec<N>& y_new) {
    while (next < ts.size() && ts[next] <= t_new) {
      if (ts[next] >= t_new) {
        on_sample(next, ts[next], y_new);
      } else {
        on_sample(next, ts[next], ds.eval(ts[next]));
      }
      ++next;
    }
    return StepControl{};
  };
  auto [tf, yf] = integrate_observed<N>(std::forward<Rhs>(rhs), t0, t1,
                                        std::move(y0), opt, observer);
  while (next < ts.size()) {
    on_sample(next, tf, yf);
    ++next;
  }
  return yf;
}

}  // namespace qdt::ode
