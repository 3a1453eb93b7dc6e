#pragma once

#include <string>
#include <vector>

#include "wavelab/errors.hpp"

namespace wavelab {

// Parameters of
//   u_tt - Δu + μ₁(1+t)^{-β} u_t - μ₂(1+t)^{-(α+1)} u = |u|^p,
//   u(x,0) = ε f(x),  u_t(x,0) = ε g(x),   x ∈ Rⁿ.
// Validated once at construction; instances are immutable.
class ProblemParams {
 public:
  struct Values {
    int n = 1;
    double p = 2.0;
    double alpha = 0.0;
    double beta = 2.0;
    double mu1 = 0.0;
    double mu2 = 1.0;
    double eps = 0.1;
    double R = 1.0;
  };

  // Throws ParameterError listing every violated constraint.
  explicit ProblemParams(const Values& v);

  static std::vector<std::string> violations(const Values& v);

  int n() const noexcept { return v_.n; }
  double p() const noexcept { return v_.p; }
  double alpha() const noexcept { return v_.alpha; }
  double beta() const noexcept { return v_.beta; }
  double mu1() const noexcept { return v_.mu1; }
  double mu2() const noexcept { return v_.mu2; }
  double eps() const noexcept { return v_.eps; }
  double R() const noexcept { return v_.R; }
  const Values& values() const noexcept { return v_; }

  ProblemParams with_eps(double eps) const;

 private:
  Values v_;
};

// Time-dependent coefficients of the equation and the damping multiplier
//   m(t) = exp(μ₁ (1+t)^{1-β} / (1-β)),
// which satisfies m (F'' + b F') = (m F')'.
class CoefficientSet {
 public:
  explicit CoefficientSet(const ProblemParams& params) : params_(params) {}

  const ProblemParams& params() const noexcept { return params_; }

  // b(t) = μ₁ (1+t)^{-β}
  double damping_coeff(double t) const;
  // μ₂ (1+t)^{-(α+1)}
  double mass_coeff(double t) const;
  double multiplier(double t) const;
  // m(0); the multiplier is bounded above by 1.
  double multiplier_floor() const;

 private:
  ProblemParams params_;
};

}  // namespace wavelab
