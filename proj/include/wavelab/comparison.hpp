#pragma once

#include <utility>

#include "wavelab/ode.hpp"
#include "wavelab/params.hpp"

namespace wavelab::comparison {

// L¹ norms of the (ε-free) initial profiles f and g.
struct DataNorms {
  double f_l1 = 0.0;
  double g_l1 = 0.0;
};

// Volume of the unit ball in Rⁿ, 2π^{n/2}/(n Γ(n/2)).
double unit_ball_volume(int n);
// Area of the unit sphere S^{n-1}, 2π^{n/2}/Γ(n/2).
double unit_sphere_area(int n);

// Hölder constant C₁ = (|B₁| Rⁿ)^{-(p-1)}.
double holder_C1(const ProblemParams& params);
// B(t) = m(0) C₁ (1+t)^{-n(p-1)}.
double holder_B(const ProblemParams& params, double t);

// Time t̃ solving ½ m(0) μ₂ (1+t̃)^{-max(0,α+1)} t̃² = 1; F₀(t̃) ≥ 2F₀(0) when F₀'(0) = 0.
double doubling_time(const ProblemParams& params);

// Solution of J'' = c (1+t)^{q-2} J on [t0, ∞) with J(t0) = εJ₀, J'(t0) = εJ₁,
// written as J = ε c₊ J₊ + c₋ J₋ with J±(t) = (1+t)^{1/2} B±_{1/q}(2√c/q (1+t)^{q/2})
// and B⁺ = I, B⁻ = K. c_minus carries the factor ε.
class ComparisonSetup {
 public:
  // Anchors at choose_t0().
  ComparisonSetup(const ProblemParams& params, DataNorms norms);
  ComparisonSetup(const ProblemParams& params, DataNorms norms, double t0);

  const ProblemParams& params() const noexcept { return params_; }
  double c() const noexcept { return c_; }
  double q() const noexcept { return q_; }
  double order() const noexcept { return 1.0 / q_; }
  double J0() const noexcept { return J0_; }
  double J1() const noexcept { return J1_; }
  double t0() const noexcept { return t0_; }
  double eps() const noexcept { return params_.eps(); }
  double c_plus() const noexcept { return c_plus_; }
  double c_minus() const noexcept { return c_minus_; }

  // Bessel argument 2√c/q (1+t)^{q/2}.
  double bessel_arg(double t) const;

  // log J± and the logarithmic derivatives J±'/J±.
  double log_J_plus(double t) const;
  double log_J_minus(double t) const;
  double dlog_J_plus(double t) const;
  double dlog_J_minus(double t) const;
  double J_plus(double t) const;
  double J_minus(double t) const;

  double J_eval(double t) const;
  double J_derivative(double t) const;
  // log J(t), valid while c₊ > 0; does not overflow.
  double log_J(double t) const;

  // One-term asymptotic form of J₊ from the large-argument Bessel expansion.
  double log_J_plus_asymptotic(double t) const;

 private:
  ProblemParams params_;
  double c_;
  double q_;
  double J0_;
  double J1_;
  double t0_;
  double c_plus_ = 0.0;
  double c_minus_ = 0.0;
};

// (c₊, c₋) from the 2×2 linear system at t0. Throws SingularSystemError.
std::pair<double, double> solve_c_coeffs(const ProblemParams& params, DataNorms norms, double t0);
// The same coefficients from the explicit Bessel formulas (c₋ includes ε).
std::pair<double, double> closed_form_c_coeffs(const ProblemParams& params, DataNorms norms,
                                               double t0);

// Smallest t0 on {0.5k : k ≥ 1} with c₊ > 0. Throws DomainError for zero data,
// SearchExhaustedError past t0 = 10⁴.
double choose_t0(const ProblemParams& params, DataNorms norms);

struct EnvelopeConstants {
  double C1 = 0.0;
  double C2 = 0.0;
  double T1 = 0.0;
  double T2 = 0.0;
};

// Bracket of h'(t) for h = B^{1/2} A^{(p-1)/2-δ}:
//   -n(p-1)/2 + ((p-1)/2 - δ)[(1+α)/4 + √(m(0)μ₂)(1+t)^{(1-α)/2}].
double h_prime_bracket(const ProblemParams& params, double delta, double t);
// Root of the bracket, clamped below at 0.
double monotonicity_onset(const ProblemParams& params, double delta);

EnvelopeConstants calibrate_envelope(const ComparisonSetup& setup);

// log of (1+t)^{(1+α)/4} exp(2√(m(0)μ₂)/(1-α) (1+t)^{(1-α)/2}).
double log_envelope_shape(const ProblemParams& params, double t);
// A(t) = ε C₂ shape(t), t ≥ T1. Throws RegimeError below T1.
double envelope_A(const ProblemParams& params, const EnvelopeConstants& k, double t);
double log_envelope_A(const ProblemParams& params, const EnvelopeConstants& k, double t);

// {m F'}' = m μ₂ (1+t)^{-(α+1)} F + B(t)|F|^p from (F(0), F'(0)).
ode::BlowupResult f0_lower_ode(const ProblemParams& params, double F0, double dF0, double t_end,
                               const ode::BlowupOptions& opts = {});

}  // namespace wavelab::comparison
