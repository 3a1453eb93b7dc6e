#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavelab/comparison.hpp"
#include "wavelab/params.hpp"

namespace wavelab::lifespan {

// δ' = 2/(p-1) - n + (1+α)/4
double exponent_delta_prime(const ProblemParams& params);
// κ = (2/(1-α)) √(μ₂ exp(μ₁/(1-β)))
double kappa(const ProblemParams& params);

struct LifespanQuery {
  ProblemParams params;
  double eps_bar;
  double exponent_delta_prime;
  double kappa;
};

LifespanQuery make_query(const ProblemParams& params, double eps_bar);

struct LifespanReport {
  double eps_bar = 0.0;
  double zeta = 0.0;
  double bound = 0.0;  // 3ζ
  double residual = 0.0;  // |g(ζ) - 1|
  double asymptote_c = 0.0;
  double asymptote = 0.0;  // c [log(1/ε̄)]^{2/(1-α)}
  std::string branch_note;
  std::vector<std::string> warnings;
  // Set by theorem_bound.
  double C = 0.0;
  double T_tilde = 0.0;
  std::optional<bool> kato_condition_ok;
};

// Root finder for g(ζ) = ε̄ ζ^{δ'} exp(κ ζ^{(1-α)/2}) = 1, worked in log form.
class LifespanSolver {
 public:
  explicit LifespanSolver(const ProblemParams& params);

  double delta_prime() const noexcept { return delta_prime_; }
  double kappa() const noexcept { return kappa_; }
  // (1-α)/2
  double power() const noexcept { return power_; }

  double log_g(double eps_bar, double zeta) const;
  // d(log g)/dζ
  double dlog_g(double zeta) const;
  // Minimiser of log g when δ' < 0.
  double stationary_point() const;

  // The larger root. Throws DomainError for ε̄ ∉ (0,1) and NoRootError when
  // δ' < 0 and min g > 1.
  LifespanReport zeta_solve(double eps_bar) const;

  // c with ζ(ε̄) ≤ c [log(1/ε̄)]^{2/(1-α)} whenever log(1/ε̄) ≥ 1.
  double asymptote_c() const;
  // c [log(1/ε̄)]^{2/(1-α)}; requires 0 < ε̄ < 1/e.
  double log_asymptote(double eps_bar) const;

 private:
  double delta_prime_;
  double kappa_;
  double power_;
};

// C = C₂ [δ m(0) √C₁ / (2√(p+1))]^{2/(p-1)} with δ = (p-1)/4.
double assemble_C(const ProblemParams& params, const comparison::EnvelopeConstants& k);

// Chains envelope calibration, C, ζ(Cε) and the Kato cross-check for fixed data.
class TheoremChain {
 public:
  TheoremChain(const ProblemParams& params, comparison::DataNorms norms);

  const comparison::ComparisonSetup& setup() const noexcept { return setup_; }
  const comparison::EnvelopeConstants& envelope() const noexcept { return envelope_; }
  double C() const noexcept { return C_; }
  double T0_tilde() const noexcept { return T0_tilde_; }
  double T1_tilde() const noexcept { return T1_tilde_; }
  const LifespanSolver& solver() const noexcept { return solver_; }

  // Throws DomainError unless 0 < ε and Cε < 1.
  LifespanReport theorem_bound(double eps) const;

 private:
  ProblemParams params_;
  comparison::DataNorms norms_;
  comparison::ComparisonSetup setup_;
  comparison::EnvelopeConstants envelope_;
  LifespanSolver solver_;
  double C_;
  double T0_tilde_;
  double T1_tilde_;
};

}  // namespace wavelab::lifespan
