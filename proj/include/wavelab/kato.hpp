#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavelab/errors.hpp"
#include "wavelab/ode.hpp"

namespace wavelab::kato {

using TimeFn = std::function<double(double)>;

// Data of a Kato-type blow-up lemma. F is any function with
//   F ≥ A on [T̃₀, T),  {m F'}' ≥ B |F|^p on [0, T),  F(0), F'(0) ≥ 0, F(0) + F'(0) > 0,
// where B is positive and decreasing and m_lo ≤ m ≤ m_hi.
struct KatoInstance {
  TimeFn A;
  TimeFn B;
  TimeFn m;
  TimeFn log_A;  // optional; used instead of log(A(t)) when set
  double m_lo = 1.0;
  double m_hi = 1.0;
  double delta = 0.0;  // 0 < delta < (p-1)/2
  double p = 2.0;
  double F0 = 0.0;
  double F0p = 0.0;
  std::optional<double> t_double;  // F(t_double) ≥ 2F(0); needed when F0p = 0
  double T0_tilde = 0.0;           // A is a lower bound from here on
};

struct KatoReport {
  double T0_tilde = 0.0;
  double T1_tilde = 0.0;
  double candidate = 0.0;
  bool candidate_ok = false;  // the inequality held at the requested candidate
  double T_tilde = 0.0;       // smallest passing T̃ ≥ candidate when the candidate fails
  double bound = 0.0;         // 3 T̃
  bool condition_ok = false;
  double log_lhs = 0.0;  // log(T̃ h(T̃) A(T̃)^δ)
  double log_rhs = 0.0;  // log(δ^{-1} m̄ √((p+1)/m̲))
  std::vector<std::pair<double, double>> h_values;
};

// Throws HypothesisError for δ out of range, invalid (hp3) or bad m bounds.
void validate(const KatoInstance& inst);

// h(t) = B(t)^{1/2} A(t)^{(p-1)/2-δ}. Throws DomainError below T̃₀.
double h_eval(const KatoInstance& inst, double t);
double log_h(const KatoInstance& inst, double t);

// m̄ m̲^{-1} F(0)/F'(0), or t_double when F'(0) = 0.
double compute_T1_tilde(const KatoInstance& inst);

double log_condition_lhs(const KatoInstance& inst, double T_tilde);
double log_condition_rhs(const KatoInstance& inst);

// First sampled time after which h is non-decreasing on [start, horizon].
double find_h_monotone_onset(const KatoInstance& inst, double start, double horizon);

// Checks the lemma's hypotheses by sampling on a geometric grid (10³ points per
// decade) and evaluates the blow-up condition at the candidate. When the
// candidate fails, searches upward for the smallest passing T̃.
KatoReport certify(const KatoInstance& inst, double T_tilde_candidate);

// Integrates the equality case {m F'}' = B |F|^p.
ode::BlowupResult ode_blowup_oracle(const TimeFn& m, const TimeFn& B, double p, double F0,
                                    double F0p, double t_max, double threshold = 1e10);

// Geometric sampling grid on [lo, hi] with the given density per decade; a
// zero lower end is included as a point in its own right.
std::vector<double> geometric_grid(double lo, double hi, int per_decade = 1000);

}  // namespace wavelab::kato
