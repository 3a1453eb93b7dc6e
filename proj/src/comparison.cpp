#include "wavelab/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <numbers>
#include <string>

#include "wavelab/errors.hpp"
#include "wavelab/specfun.hpp"

namespace wavelab::comparison {

namespace {

constexpr double kPi = std::numbers::pi;

// T1 criteria and C₂ safety factor.
constexpr double kAsymAgreement = 0.10;
constexpr double kMinusContamination = 0.01;
constexpr double kC2Safety = 0.9;
constexpr double kT0GridStep = 0.5;
constexpr double kT0Max = 1e4;

double log_sum_exp_signed(double la, double sa, double lb, double sb, double& sign) {
  // sa·e^{la} + sb·e^{lb}, returned as log|.| with its sign.
  const double top = std::max(la, lb);
  const double v = sa * std::exp(la - top) + sb * std::exp(lb - top);
  sign = v < 0.0 ? -1.0 : 1.0;
  return top + std::log(std::abs(v));
}

}  // namespace

double unit_sphere_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double unit_ball_volume(int n) { return unit_sphere_area(n) / n; }

double holder_C1(const ProblemParams& params) {
  const double vol = unit_ball_volume(params.n()) * std::pow(params.R(), params.n());
  return std::pow(vol, -(params.p() - 1.0));
}

double holder_B(const ProblemParams& params, double t) {
  const CoefficientSet coefs(params);
  return coefs.multiplier_floor() * holder_C1(params) *
         std::pow(1.0 + t, -params.n() * (params.p() - 1.0));
}

double doubling_time(const ProblemParams& params) {
  const double k = 0.5 * CoefficientSet(params).multiplier_floor() * params.mu2();
  const double e = std::max(0.0, params.alpha() + 1.0);
  auto lhs = [&](double t) { return k * t * t * std::pow(1.0 + t, -e); };
  double lo = 0.0;
  double hi = 1.0;
  while (lhs(hi) < 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw SearchExhaustedError("doubling_time: no solution");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (lhs(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

ComparisonSetup::ComparisonSetup(const ProblemParams& params, DataNorms norms)
    : ComparisonSetup(params, norms, choose_t0(params, norms)) {}

ComparisonSetup::ComparisonSetup(const ProblemParams& params, DataNorms norms, double t0)
    : params_(params),
      c_(CoefficientSet(params).multiplier_floor() * params.mu2()),
      q_(1.0 - params.alpha()),
      J0_(0.5 * norms.f_l1),
      J1_(0.5 * CoefficientSet(params).multiplier_floor() * norms.g_l1),
      t0_(t0) {
  if (!(t0 > 0.0)) throw DomainError("comparison: anchor time t0 must be > 0");
  std::tie(c_plus_, c_minus_) = solve_c_coeffs(params, norms, t0);
}

double ComparisonSetup::bessel_arg(double t) const {
  return 2.0 * std::sqrt(c_) / q_ * std::pow(1.0 + t, 0.5 * q_);
}

double ComparisonSetup::log_J_plus(double t) const {
  return 0.5 * std::log1p(t) + specfun::log_bessel_ik(order(), bessel_arg(t)).log_i;
}

double ComparisonSetup::log_J_minus(double t) const {
  return 0.5 * std::log1p(t) + specfun::log_bessel_ik(order(), bessel_arg(t)).log_k;
}

double ComparisonSetup::dlog_J_plus(double t) const {
  const double s = 1.0 + t;
  const double dz = std::sqrt(c_) * std::pow(s, 0.5 * q_ - 1.0);
  return 0.5 / s + specfun::log_bessel_ik(order(), bessel_arg(t)).di * dz;
}

double ComparisonSetup::dlog_J_minus(double t) const {
  const double s = 1.0 + t;
  const double dz = std::sqrt(c_) * std::pow(s, 0.5 * q_ - 1.0);
  return 0.5 / s + specfun::log_bessel_ik(order(), bessel_arg(t)).dk * dz;
}

double ComparisonSetup::J_plus(double t) const { return std::exp(log_J_plus(t)); }
double ComparisonSetup::J_minus(double t) const { return std::exp(log_J_minus(t)); }

double ComparisonSetup::J_eval(double t) const {
  if (t < t0_) throw DomainError("J_eval: t must be >= t0");
  const double lp = log_J_plus(t);
  if (lp > 700.0) {
    if (!(c_plus_ > 0.0)) throw RangeError("J_eval: overflow");
    const double l = log_J(t);
    if (l > 709.0) throw RangeError("J_eval: J(t) overflows; use log_J");
    return std::exp(l);
  }
  return eps() * c_plus_ * std::exp(lp) + c_minus_ * J_minus(t);
}

double ComparisonSetup::J_derivative(double t) const {
  if (t < t0_) throw DomainError("J_derivative: t must be >= t0");
  return eps() * c_plus_ * J_plus(t) * dlog_J_plus(t) +
         c_minus_ * J_minus(t) * dlog_J_minus(t);
}

double ComparisonSetup::log_J(double t) const {
  if (!(c_plus_ > 0.0)) throw DomainError("log_J requires c_plus > 0");
  double sign = 1.0;
  const double la = std::log(eps() * c_plus_) + log_J_plus(t);
  if (c_minus_ == 0.0) return la;
  const double lb = std::log(std::abs(c_minus_)) + log_J_minus(t);
  const double l = log_sum_exp_signed(la, 1.0, lb, c_minus_ < 0.0 ? -1.0 : 1.0, sign);
  if (sign < 0.0) throw DomainError("log_J: J(t) is negative");
  return l;
}

double ComparisonSetup::log_J_plus_asymptotic(double t) const {
  const double s = 1.0 + t;
  return 0.5 * std::log(q_ / kPi) - std::log(2.0) - 0.25 * std::log(c_) +
         (0.5 - 0.25 * q_) * std::log(s) + bessel_arg(t);
}

// ---------------------------------------------------------------------------

std::pair<double, double> solve_c_coeffs(const ProblemParams& params, DataNorms norms, double t0) {
  // Solve a J₊ + b J₋ = εJ₀, a J₊' + b J₋' = εJ₁ in logarithmic form:
  //   W = J₊J₋(d₋ - d₊), a = ε(J₀ d₋ - J₁)/(J₊(d₋ - d₊)), b = ε(J₁ - J₀ d₊)/(J₋(d₋ - d₊)).
  const double c = CoefficientSet(params).multiplier_floor() * params.mu2();
  const double q = 1.0 - params.alpha();
  const double J0 = 0.5 * norms.f_l1;
  const double J1 = 0.5 * CoefficientSet(params).multiplier_floor() * norms.g_l1;
  const double s = 1.0 + t0;
  const double z = 2.0 * std::sqrt(c) / q * std::pow(s, 0.5 * q);
  const double dz = std::sqrt(c) * std::pow(s, 0.5 * q - 1.0);
  const auto ik = specfun::log_bessel_ik(1.0 / q, z);
  const double log_jp = 0.5 * std::log(s) + ik.log_i;
  const double log_jm = 0.5 * std::log(s) + ik.log_k;
  const double dp = 0.5 / s + ik.di * dz;
  const double dm = 0.5 / s + ik.dk * dz;
  const double gap = dm - dp;
  if (!(std::abs(gap) > 1e-14 * (std::abs(dm) + std::abs(dp))) || !std::isfinite(gap)) {
    throw SingularSystemError("solve_c_coeffs: Wronskian of (J+, J-) vanishes at t0 = " +
                              std::to_string(t0));
  }
  const double c_plus = (J0 * dm - J1) * std::exp(-log_jp) / gap;
  const double c_minus = params.eps() * (J1 - J0 * dp) * std::exp(-log_jm) / gap;
  if (!std::isfinite(c_plus) || !std::isfinite(c_minus)) {
    throw RangeError("solve_c_coeffs: coefficients overflow at t0 = " + std::to_string(t0));
  }
  return {c_plus, c_minus};
}

std::pair<double, double> closed_form_c_coeffs(const ProblemParams& params, DataNorms norms,
                                               double t0) {
  const double c = CoefficientSet(params).multiplier_floor() * params.mu2();
  const double q = 1.0 - params.alpha();
  const double nu = 1.0 / q;
  const double J0 = 0.5 * norms.f_l1;
  const double J1 = 0.5 * CoefficientSet(params).multiplier_floor() * norms.g_l1;
  const double s = 1.0 + t0;
  const double z = 2.0 * std::sqrt(c) / q * std::pow(s, 0.5 * q);
  const double lead = 2.0 / q * std::pow(s, -0.5) * (s * J1 - J0);
  const double tail = J0 * 2.0 * std::sqrt(c) / q * std::pow(s, 0.5 * (q - 1.0));
  const double c_plus = lead * specfun::bessel_k(nu, z) + tail * specfun::bessel_k(nu + 1.0, z);
  const double c_minus =
      -lead * specfun::bessel_i(nu, z) + tail * specfun::bessel_i(nu + 1.0, z);
  return {c_plus, params.eps() * c_minus};
}

double choose_t0(const ProblemParams& params, DataNorms norms) {
  if (!(norms.f_l1 > 0.0 || norms.g_l1 > 0.0)) {
    throw DomainError("choose_t0: initial data vanish identically (J0 = J1 = 0)");
  }
  for (int k = 1; k * kT0GridStep <= kT0Max; ++k) {
    const double t0 = k * kT0GridStep;
    if (solve_c_coeffs(params, norms, t0).first > 0.0) return t0;
  }
  throw SearchExhaustedError("choose_t0: no anchor t0 <= 1e4 gives c_plus > 0");
}

// ---------------------------------------------------------------------------

double h_prime_bracket(const ProblemParams& params, double delta, double t) {
  const double p = params.p();
  const double sqrt_c = std::sqrt(CoefficientSet(params).multiplier_floor() * params.mu2());
  return -params.n() * (p - 1.0) / 2.0 +
         ((p - 1.0) / 2.0 - delta) *
             ((1.0 + params.alpha()) / 4.0 +
              sqrt_c * std::pow(1.0 + t, (1.0 - params.alpha()) / 2.0));
}

double monotonicity_onset(const ProblemParams& params, double delta) {
  const double p = params.p();
  const double w = (p - 1.0) / 2.0 - delta;
  if (!(w > 0.0)) throw DomainError("monotonicity_onset: delta must be < (p-1)/2");
  const double sqrt_c = std::sqrt(CoefficientSet(params).multiplier_floor() * params.mu2());
  const double needed = params.n() * (p - 1.0) / (2.0 * w) - (1.0 + params.alpha()) / 4.0;
  if (needed <= 0.0) return 0.0;
  const double s = std::pow(needed / sqrt_c, 2.0 / (1.0 - params.alpha()));
  return std::max(0.0, s - 1.0);
}

double log_envelope_shape(const ProblemParams& params, double t) {
  const double a = params.alpha();
  const double sqrt_c = std::sqrt(CoefficientSet(params).multiplier_floor() * params.mu2());
  return (1.0 + a) / 4.0 * std::log1p(t) +
         2.0 * sqrt_c / (1.0 - a) * std::pow(1.0 + t, (1.0 - a) / 2.0);
}

EnvelopeConstants calibrate_envelope(const ComparisonSetup& setup) {
  const ProblemParams& params = setup.params();
  EnvelopeConstants k;
  k.C1 = holder_C1(params);
  k.T2 = monotonicity_onset(params, (params.p() - 1.0) / 4.0);

  // Per unit ε, c₋ without its ε factor.
  const double cm = setup.c_minus() / setup.eps();
  const double cp = setup.c_plus();
  auto passes = [&](double i) {
    const double t = setup.t0() + kT0GridStep * i;
    const double lp = setup.log_J_plus(t);
    const double asym_gap = std::abs(std::expm1(setup.log_J_plus_asymptotic(t) - lp));
    const double contamination = std::abs(cm) * std::exp(setup.log_J_minus(t) - lp) / cp;
    return asym_gap <= kAsymAgreement && contamination <= kMinusContamination;
  };
  // Linear scan over the first grid points, then doubling and bisection on the
  // grid index; both gaps shrink monotonically once the asymptotic regime is reached.
  bool found = false;
  double index = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    if (passes(i)) {
      index = i;
      found = true;
      break;
    }
  }
  if (!found) {
    double lo = 1000.0, hi = 2000.0;
    while (hi < 1e15 && !passes(hi)) {
      lo = hi;
      hi *= 2.0;
    }
    if (hi < 1e15) {
      while (hi - lo > 1.0) {
        const double mid = std::floor(0.5 * (lo + hi));
        (passes(mid) ? hi : lo) = mid;
      }
      index = hi;
      found = true;
    }
  }
  if (found) k.T1 = setup.t0() + kT0GridStep * index;
  if (!found) throw CalibrationError("calibrate_envelope: no onset T1 found");

  constexpr int kSamples = 4000;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double t = k.T1 + (19.0 * k.T1) * i / kSamples;
    const double shape = log_envelope_shape(params, t);
    const double ratio = cp * std::exp(setup.log_J_plus(t) - shape) +
                         cm * std::exp(setup.log_J_minus(t) - shape);
    min_ratio = std::min(min_ratio, ratio);
  }
  if (!(min_ratio > 1e-300) || !std::isfinite(min_ratio)) {
    throw CalibrationError("calibrate_envelope: J/shape is not bounded away from zero");
  }
  k.C2 = kC2Safety * min_ratio;
  return k;
}

double log_envelope_A(const ProblemParams& params, const EnvelopeConstants& k, double t) {
  if (t < k.T1) {
    throw RegimeError("envelope_A: t = " + std::to_string(t) + " below T1 = " +
                      std::to_string(k.T1));
  }
  return std::log(params.eps() * k.C2) + log_envelope_shape(params, t);
}

double envelope_A(const ProblemParams& params, const EnvelopeConstants& k, double t) {
  return std::exp(log_envelope_A(params, k, t));
}

ode::BlowupResult f0_lower_ode(const ProblemParams& params, double F0, double dF0, double t_end,
                               const ode::BlowupOptions& opts) {
  if (F0 < 0.0 || dF0 < 0.0 || !(F0 + dF0 > 0.0)) {
    throw DomainError("f0_lower_ode: need F(0), F'(0) >= 0, not both zero");
  }
  const CoefficientSet coefs(params);
  ode::MomentumSystem sys;
  sys.p = params.p();
  sys.m = [coefs](double t) { return coefs.multiplier(t); };
  const double b0 = coefs.multiplier_floor() * holder_C1(params);
  const double decay = -params.n() * (params.p() - 1.0);
  sys.force = [coefs, b0, decay, p = params.p()](double t, double F) {
    return coefs.multiplier(t) * coefs.mass_coeff(t) * F +
           b0 * std::pow(1.0 + t, decay) * std::pow(std::abs(F), p);
  };
  return ode::integrate_to_blowup(sys, F0, dF0, t_end, opts);
}

}  // namespace wavelab::comparison
