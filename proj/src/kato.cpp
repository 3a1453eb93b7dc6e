#include "wavelab/kato.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab::kato {

namespace {

constexpr double kMonotoneSlack = 1e-12;

double logA(const KatoInstance& inst, double t) {
  return inst.log_A ? inst.log_A(t) : std::log(inst.A(t));
}

}  // namespace

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
  std::vector<double> out;
  double start = lo;
  if (lo <= 0.0) {
    out.push_back(0.0);
    start = std::min(1e-3, 1e-3 * hi);
  }
  if (!(hi > start)) {
    out.push_back(hi);
    return out;
  }
  const double decades = std::log10(hi / start);
  const int count = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
  for (int i = 0; i < count; ++i) {
    out.push_back(start * std::pow(hi / start, static_cast<double>(i) / (count - 1)));
  }
  out.back() = hi;
  return out;
}

void validate(const KatoInstance& inst) {
  if (!(inst.p > 1.0)) throw HypothesisError("p-range", "p must exceed 1");
  if (!(inst.delta > 0.0 && inst.delta < (inst.p - 1.0) / 2.0)) {
    throw HypothesisError("delta-range", "need 0 < delta < (p-1)/2, got delta = " +
                                             std::to_string(inst.delta));
  }
  if (!(inst.m_lo > 0.0 && inst.m_lo <= inst.m_hi)) {
    throw HypothesisError("m-bounds", "need 0 < m_lo <= m_hi");
  }
  if (inst.F0 < 0.0 || inst.F0p < 0.0 || !(inst.F0 + inst.F0p > 0.0)) {
    throw HypothesisError("hp3", "need F(0), F'(0) >= 0 and F(0) + F'(0) > 0");
  }
  if (inst.T0_tilde < 0.0) throw HypothesisError("T0-range", "T0_tilde must be >= 0");
}

double log_h(const KatoInstance& inst, double t) {
  if (t < inst.T0_tilde) {
    throw DomainError("h_eval: t = " + std::to_string(t) + " below T0_tilde");
  }
  return 0.5 * std::log(inst.B(t)) + ((inst.p - 1.0) / 2.0 - inst.delta) * logA(inst, t);
}

double h_eval(const KatoInstance& inst, double t) { return std::exp(log_h(inst, t)); }

double compute_T1_tilde(const KatoInstance& inst) {
  if (inst.F0p != 0.0) return inst.m_hi / inst.m_lo * inst.F0 / inst.F0p;
  if (!inst.t_double) {
    throw HypothesisError("F(t)>2F0", "F'(0) = 0 requires a doubling time t_double");
  }
  return *inst.t_double;
}

double log_condition_lhs(const KatoInstance& inst, double T) {
  return std::log(T) + log_h(inst, T) + inst.delta * logA(inst, T);
}

double log_condition_rhs(const KatoInstance& inst) {
  return -std::log(inst.delta) + std::log(inst.m_hi) +
         0.5 * std::log((inst.p + 1.0) / inst.m_lo);
}

double find_h_monotone_onset(const KatoInstance& inst, double start, double horizon) {
  const auto grid = geometric_grid(start, horizon);
  double onset = start;
  double prev = log_h(inst, grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = log_h(inst, grid[i]);
    if (cur < prev - kMonotoneSlack * (1.0 + std::abs(prev))) onset = grid[i];
    prev = cur;
  }
  return onset;
}

KatoReport certify(const KatoInstance& inst, double candidate) {
  validate(inst);
  KatoReport r;
  r.T0_tilde = inst.T0_tilde;
  r.T1_tilde = compute_T1_tilde(inst);
  r.candidate = candidate;
  const double floor = std::max(r.T0_tilde, r.T1_tilde);
  if (!(candidate >= floor)) {
    throw DomainError("certify: candidate " + std::to_string(candidate) +
                      " below max(T0_tilde, T1_tilde) = " + std::to_string(floor));
  }
  if (!(candidate > 0.0)) throw DomainError("certify: candidate must be > 0");

  r.log_rhs = log_condition_rhs(inst);
  auto passes = [&](double T) { return log_condition_lhs(inst, T) >= r.log_rhs; };

  r.candidate_ok = passes(candidate);
  double T = candidate;
  if (!r.candidate_ok) {
    double lo = candidate;
    double hi = candidate;
    bool found = false;
    for (int i = 0; i < 200; ++i) {
      hi *= 2.0;
      if (passes(hi)) {
        found = true;
        break;
      }
      lo = hi;
    }
    if (found) {
      for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (passes(mid) ? hi : lo) = mid;
      }
      T = hi;
    }
    r.condition_ok = found;
  } else {
    r.condition_ok = true;
  }
  r.T_tilde = T;
  r.bound = 3.0 * T;
  r.log_lhs = log_condition_lhs(inst, T);

  // Hypotheses on the window the proof uses, [0, 3T̃].
  const double horizon = 3.0 * T;
  const auto grid = geometric_grid(0.0, horizon);
  double prev_B = inst.B(grid.front());
  for (double t : grid) {
    const double b = inst.B(t);
    const double mv = inst.m(t);
    if (!(b > 0.0)) throw HypothesisError("B-positive", "B(" + std::to_string(t) + ") <= 0");
    if (b > prev_B * (1.0 + kMonotoneSlack)) {
      throw HypothesisError("B-decreasing", "B increases near t = " + std::to_string(t));
    }
    prev_B = b;
    if (mv < inst.m_lo * (1.0 - kMonotoneSlack) || mv > inst.m_hi * (1.0 + kMonotoneSlack)) {
      throw HypothesisError("m-bounds", "m(" + std::to_string(t) + ") outside [m_lo, m_hi]");
    }
  }
  if (inst.T0_tilde < horizon) {
    const auto hgrid = geometric_grid(std::max(inst.T0_tilde, 0.0), horizon);
    double prev = log_h(inst, hgrid.front());
    for (double t : hgrid) {
      const double cur = log_h(inst, t);
      if (cur < prev - kMonotoneSlack * (1.0 + std::abs(prev))) {
        throw HypothesisError("h-monotone", "h decreases near t = " + std::to_string(t));
      }
      prev = cur;
    }
    const int stride = std::max<std::size_t>(1, hgrid.size() / 50);
    for (std::size_t i = 0; i < hgrid.size(); i += stride) {
      r.h_values.emplace_back(hgrid[i], std::exp(log_h(inst, hgrid[i])));
    }
  }
  return r;
}

ode::BlowupResult ode_blowup_oracle(const TimeFn& m, const TimeFn& B, double p, double F0,
                                    double F0p, double t_max, double threshold) {
  if (F0 < 0.0 || F0p < 0.0 || !(F0 + F0p > 0.0)) {
    throw DomainError("ode_blowup_oracle: need F(0), F'(0) >= 0, not both zero");
  }
  ode::MomentumSystem sys;
  sys.m = m;
  sys.p = p;
  sys.force = [B, p](double t, double F) { return B(t) * std::pow(std::abs(F), p); };
  ode::BlowupOptions opts;
  opts.threshold = threshold;
  return ode::integrate_to_blowup(sys, F0, F0p, t_max, opts);
}

}  // namespace wavelab::kato
