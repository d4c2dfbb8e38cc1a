/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "qdt/unraveling.hpp"

#include <cmath>
#include <stdexcept>

#include "qdt/integrate.hpp"
#include "qdt/parallel.hpp"

namespace qdt {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t CounterRng::next_u64() {
  return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double CounterRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

HistogramSpec HistogramSpec::aligned(double dq, int n) {
  HistogramSpec h;
  h.dq = dq;
  h.nbins = n;
  h.q_min = (-n / 2 - 0.5) * dq;  // bin centers at m dq, m in [-n/2, n/2)
  return h;
}

namespace {

using Vec4 = ode::StateVec<4>;
using Cplx = std::complex<double>;

struct FastPulse {
  double delta0, alpha, peak, tau, t_center;
  DriveFrame operator()(double t) const {
    const double x = (t - t_center) / tau;
    return {delta0 - alpha * (t - t_center), peak * std::exp(-0.5 * x * x)};
  }
};

Eigen::Vector2cd unpack_psi(const Vec4& y) {
  return {Cplx{y[0], y[2]}, Cplx{y[1], y[3]}};
}

void pack_psi(const Eigen::Vector2cd& psi, Vec4& y) {
  y << psi[0].real(), psi[1].real(), psi[0].imag(), psi[1].imag();
}

struct ChunkAccumulator {
  double heat_sum = 0.0;
  double heat_sq_sum = 0.0;
  long jump_sum = 0;
  long with_jumps = 0;
  long first_absorption = 0;
  std::vector<double> bin_counts;
  Eigen::Matrix2cd final_sum = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2d final_sq_re = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d final_sq_im = Eigen::Matrix2d::Zero();
};

struct TrajectoryResult {
  double heat = 0.0;
  long jumps = 0;
  int first_jump = 0;  // +1 absorption, -1 emission, 0 none
  Eigen::Matrix2cd final_proj;
};

TrajectoryResult run_one(const FastPulse& drive, const BathSpec& bath,
                         double t0, double t1, const ode::Options& oopt,
                         CounterRng& rng) {
  TrajectoryResult res;
  Eigen::Vector2cd psi{1.0, 0.0};
  double t = t0;
  double threshold = rng.uniform();

  auto rhs = [&](double tt, const Vec4& y, Vec4& dy) {
    const DriveFrame d = drive(tt);
    const DressedFrame f = dressed_frame(d);
    const PhononRates g = phonon_rates(d, bath);
    const Eigen::Vector2cd p = unpack_psi(y);
    // -i H psi - (g_a P_- + g_e P_+) psi; the non-Hermitian part halves the
    // 2 gamma loss rates.
    const Eigen::Matrix2d h = hamiltonian(d);
    Eigen::Vector2cd dp = Cplx(0.0, -1.0) * (h * p);
    if (g.absorption > 0.0 || g.emission > 0.0) {
      const Cplx cm = f.minus.cast<Cplx>().dot(p);
      const Cplx cp = f.plus.cast<Cplx>().dot(p);
      dp -= g.absorption * cm * f.minus.cast<Cplx>();
      dp -= g.emission * cp * f.plus.cast<Cplx>();
    }
    Vec4 out;
    pack_psi(dp, out);
    dy = out;
  };

  auto norm_sq = [](const Vec4& y) {
    return y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3];
  };

  while (t1 - t > 1e-12 * std::max(1.0, std::abs(t1))) {
    Vec4 y0;
    pack_psi(psi, y0);
    bool jumped = false;
    double t_jump = 0.0;
    Vec4 y_jump = Vec4::Zero();
    auto observer = [&](const ode::DenseStep<4>& ds, double t_new,
                        const Vec4& y_new) {
      if (norm_sq(y_new) > threshold) return ode::StepControl{};
      // Norm decays monotonically; bisect the crossing inside the step.
      double lo = ds.t0, hi = t_new;
      for (int it = 0; it < 80 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi));
           ++it) {
        const double mid = 0.5 * (lo + hi);
        if (norm_sq(ds.eval(mid)) > threshold)
          lo = mid;
        else
          hi = mid;
      }
      jumped = true;
      t_jump = hi;
      y_jump = ds.eval(hi);
      return ode::StepControl{true, hi};
    };
    const auto [t_stop, y_stop] =
        ode::integrate_observed<4>(rhs, t, t1, y0, oopt, observer);

    if (!jumped) {
      psi = unpack_psi(y_stop).normalized();
      break;
    }

    // Channel choice with the 2 gamma jump rates at the located time.
    t = t_jump;
    psi = unpack_psi(y_jump);
    const DriveFrame d = drive(t);
    const DressedFrame f = dressed_frame(d);
    const PhononRates g = phonon_rates(d, bath);
    const Cplx cm = f.minus.cast<Cplx>().dot(psi);
    const Cplx cp = f.plus.cast<Cplx>().dot(psi);
    const double w_abs = 2.0 * g.absorption * std::norm(cm);
    const double w_emi = 2.0 * g.emission * std::norm(cp);
    const double w_tot = w_abs + w_emi;
    if (w_tot <= 0.0) {
      // Threshold hit in a region with no active channel (numerically
      // possible only at the extreme wings); resume without a jump.
      psi.normalize();
      threshold = rng.uniform();
      continue;
    }
    const bool absorb = rng.uniform() * w_tot < w_abs;
    if (absorb) {
      psi = f.plus.cast<Cplx>() * cm;
      res.heat += f.lambda;
    } else {
      psi = f.minus.cast<Cplx>() * cp;
      res.heat -= f.lambda;
    }
    psi.normalize();
    ++res.jumps;
    if (res.first_jump == 0) res.first_jump = absorb ? +1 : -1;
    threshold = rng.uniform();
  }

  res.final_proj = psi * psi.adjoint();
  return res;
}

}  // namespace

JumpTrajectoryStats sample_trajectories(const EvolutionSpec& spec, long n,
                                        std::uint64_t seed,
                                        const HistogramSpec& hist,
                                        const McOptions& opt) {
  if (n < 1) throw std::invalid_argument("sample_trajectories: n < 1");
  if (hist.nbins < 1 || !(hist.dq > 0.0))
    throw std::invalid_argument("sample_trajectories: bad histogram spec");

  const auto [t0, t1] = spec.window();
  const ChirpedPulseParams pp = chirp_transform(spec.pulse);
  const FastPulse drive{spec.pulse.delta0, pp.alpha, pp.peak_rabi, pp.tau,
                        spec.pulse.t_center};

  ode::Options oopt;
  oopt.rel_tol = opt.rel_tol;
  oopt.abs_tol = opt.abs_tol;
  oopt.max_step = spec.resolved_max_step();

  const long chunk = std::max<long>(1, opt.chunk);
  const long n_chunks = (n + chunk - 1) / chunk;
  std::vector<ChunkAccumulator> acc(n_chunks);
  for (auto& a : acc) a.bin_counts.assign(hist.nbins, 0.0);

  parallel_chunks(n, chunk, opt.workers, [&](long begin, long end) {
    ChunkAccumulator& a = acc[begin / chunk];
    for (long i = begin; i < end; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      const TrajectoryResult r =
          run_one(drive, spec.bath, t0, t1, oopt, rng);
      a.heat_sum += r.heat;
      a.heat_sq_sum += r.heat * r.heat;
      a.jump_sum += r.jumps;
      if (r.jumps > 0) {
        ++a.with_jumps;
        if (r.first_jump > 0) ++a.first_absorption;
      }
      long bin = static_cast<long>(std::floor((r.heat - hist.q_min) / hist.dq));
      bin = std::max<long>(0, std::min<long>(hist.nbins - 1, bin));
      a.bin_counts[bin] += 1.0;
      a.final_sum += r.final_proj;
      for (int rr = 0; rr < 2; ++rr)
        for (int cc = 0; cc < 2; ++cc) {
          const Cplx v = r.final_proj(rr, cc);
          a.final_sq_re(rr, cc) += v.real() * v.real();
          a.final_sq_im(rr, cc) += v.imag() * v.imag();
        }
    }
  });

  // Merge chunks in index order so results do not depend on scheduling.
  JumpTrajectoryStats out;
  out.n_trajectories = n;
  out.seed = seed;
  out.histogram = hist;
  out.bin_mass.assign(hist.nbins, 0.0);
  double heat_sum = 0.0, heat_sq = 0.0;
  long jumps = 0;
  Eigen::Matrix2cd fsum = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2d fsq_re = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d fsq_im = Eigen::Matrix2d::Zero();
  for (const ChunkAccumulator& a : acc) {
    heat_sum += a.heat_sum;
    heat_sq += a.heat_sq_sum;
    jumps += a.jump_sum;
    out.trajectories_with_jumps += a.with_jumps;
    out.first_jump_absorption += a.first_absorption;
    for (int b = 0; b < hist.nbins; ++b) out.bin_mass[b] += a.bin_counts[b];
    fsum += a.final_sum;
    fsq_re += a.final_sq_re;
    fsq_im += a.final_sq_im;
  }
  const double dn = static_cast<double>(n);
  out.mean_heat = heat_sum / dn;
  const double var =
      std::max(0.0, heat_sq / dn - out.mean_heat * out.mean_heat);
  out.stderr_heat = std::sqrt(var / dn);
  out.mean_jumps = static_cast<double>(jumps) / dn;
  for (int b = 0; b < hist.nbins; ++b) out.bin_mass[b] /= dn;
  out.mean_final = fsum / dn;
  for (int rr = 0; rr < 2; ++rr)
    for (int cc = 0; cc < 2; ++cc) {
      const double mre = out.mean_final(rr, cc).real();
      const double mim = out.mean_final(rr, cc).imag();
      const double vre = std::max(0.0, fsq_re(rr, cc) / dn - mre * mre);
      const double vim = std::max(0.0, fsq_im(rr, cc) / dn - mim * mim);
      out.stderr_final_re(rr, cc) = std::sqrt(vre / dn);
      out.stderr_final_im(rr, cc) = std::sqrt(vim / dn);
    }
  return out;
}

}  // namespace qdt
