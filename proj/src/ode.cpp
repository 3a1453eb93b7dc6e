#include "wavelab/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace wavelab::ode {

namespace {

using State = std::array<double, 2>;  // (F, P)

State rhs(const MomentumSystem& sys, double t, const State& y) {
  return {y[1] / sys.m(t), sys.force(t, y[0])};
}

State rk4(const MomentumSystem& sys, double t, const State& y, double h) {
  const State k1 = rhs(sys, t, y);
  const State y2 = {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]};
  const State k2 = rhs(sys, t + 0.5 * h, y2);
  const State y3 = {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]};
  const State k3 = rhs(sys, t + 0.5 * h, y3);
  const State y4 = {y[0] + h * k3[0], y[1] + h * k3[1]};
  const State k4 = rhs(sys, t + h, y4);
  return {y[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
          y[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

struct SingleRun {
  bool blow_up = false;
  double t_stop = 0.0;
  double remaining = 0.0;  // asymptotic estimate of T - t_stop
  double t_end = 0.0;
  long steps = 0;
  std::vector<TracePoint> trace;
};

double remaining_time(const MomentumSystem& sys, double t, const State& y) {
  const double dF = y[1] / sys.m(t);
  if (!(dF > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 / (sys.p - 1.0) * y[0] / dF;
}

SingleRun run_once(const MomentumSystem& sys, double F0, double dF0, double t_max,
                   const BlowupOptions& opts, double rtol) {
  SingleRun out;
  double t = 0.0;
  State y = {F0, sys.m(0.0) * dF0};
  double h = std::min(opts.h_initial, t_max);
  auto record = [&](double tt, const State& yy) {
    if (opts.record_trace) out.trace.push_back({tt, yy[0], yy[1] / sys.m(tt)});
  };
  record(t, y);

  for (long step = 0; step < opts.max_steps; ++step) {
    if (t >= t_max) break;
    const bool crossed = y[0] > opts.threshold;
    if (crossed) {
      const double rem = remaining_time(sys, t, y);
      if (rem <= opts.remaining_rel * std::max(t, 1.0)) {
        out.blow_up = true;
        out.t_stop = t;
        out.remaining = rem;
        break;
      }
    }
    if (h < opts.collapse_rel * std::max(t, 1.0)) {
      if (crossed) {
        out.blow_up = true;
        out.t_stop = t;
        out.remaining = std::min(remaining_time(sys, t, y), 1e-3 * t);
      }
      break;
    }
    const double hstep = std::min(h, t_max - t);
    const State full = rk4(sys, t, y, hstep);
    const State mid = rk4(sys, t, y, 0.5 * hstep);
    const State half = rk4(sys, t + 0.5 * hstep, mid, 0.5 * hstep);

    double ratio = 0.0;
    bool finite = true;
    for (int i = 0; i < 2; ++i) {
      if (!std::isfinite(full[i]) || !std::isfinite(half[i])) finite = false;
      const double scale = opts.atol + rtol * std::max(std::abs(y[i]), std::abs(half[i]));
      ratio = std::max(ratio, std::abs(half[i] - full[i]) / 15.0 / scale);
    }
    if (!finite || ratio > 1.0) {
      h = hstep * (finite ? std::max(0.1, 0.9 * std::pow(ratio, -0.2)) : 0.25);
      continue;
    }
    t += hstep;
    for (int i = 0; i < 2; ++i) y[i] = half[i] + (half[i] - full[i]) / 15.0;
    ++out.steps;
    record(t, y);
    const double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 4.0;
    h = hstep * std::clamp(grow, 0.1, 4.0);
  }
  out.t_end = t;
  return out;
}

}  // namespace

BlowupResult integrate_to_blowup(const MomentumSystem& sys, double F0, double dF0, double t_max,
                                 const BlowupOptions& opts) {
  SingleRun coarse = run_once(sys, F0, dF0, t_max, opts, opts.rtol);
  BlowupResult out;
  out.t_end = coarse.t_end;
  out.steps = coarse.steps;
  out.blow_up = coarse.blow_up;
  if (coarse.blow_up) {
    BlowupOptions fine_opts = opts;
    fine_opts.record_trace = false;
    const SingleRun fine = run_once(sys, F0, dF0, t_max, fine_opts, opts.rtol * 1e-2);
    double lo = coarse.t_stop;
    double hi = coarse.t_stop + 2.0 * coarse.remaining;
    if (fine.blow_up) {
      const double est_c = coarse.t_stop + coarse.remaining;
      const double est_f = fine.t_stop + fine.remaining;
      const double pad = 10.0 * std::abs(est_c - est_f) + 1e-12 * est_c;
      lo = std::min(lo, fine.t_stop) - pad;
      hi = std::max(hi, fine.t_stop + 2.0 * fine.remaining) + pad;
    }
    out.t_lo = lo;
    out.t_hi = hi;
  }
  out.trace = std::move(coarse.trace);
  return out;
}

}  // namespace wavelab::ode
