#include "wavelab/lifespan.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wavelab/errors.hpp"
#include "wavelab/kato.hpp"

namespace wavelab::lifespan {

namespace {
constexpr int kMaxBisection = 200;
}

double exponent_delta_prime(const ProblemParams& params) {
  return 2.0 / (params.p() - 1.0) - params.n() + (1.0 + params.alpha()) / 4.0;
}

double kappa(const ProblemParams& params) {
  return 2.0 / (1.0 - params.alpha()) *
         std::sqrt(params.mu2() * std::exp(params.mu1() / (1.0 - params.beta())));
}

LifespanQuery make_query(const ProblemParams& params, double eps_bar) {
  if (!(eps_bar > 0.0 && eps_bar < 1.0)) {
    throw DomainError("lifespan: eps_bar must lie in (0, 1)");
  }
  return {params, eps_bar, exponent_delta_prime(params), kappa(params)};
}

LifespanSolver::LifespanSolver(const ProblemParams& params)
    : delta_prime_(exponent_delta_prime(params)),
      kappa_(lifespan::kappa(params)),
      power_((1.0 - params.alpha()) / 2.0) {}

double LifespanSolver::log_g(double eps_bar, double zeta) const {
  return std::log(eps_bar) + delta_prime_ * std::log(zeta) + kappa_ * std::pow(zeta, power_);
}

double LifespanSolver::dlog_g(double zeta) const {
  return delta_prime_ / zeta + kappa_ * power_ * std::pow(zeta, power_ - 1.0);
}

double LifespanSolver::stationary_point() const {
  if (delta_prime_ >= 0.0) return 0.0;
  return std::pow(-delta_prime_ / (kappa_ * power_), 1.0 / power_);
}

LifespanReport LifespanSolver::zeta_solve(double eps_bar) const {
  if (!(eps_bar > 0.0 && eps_bar < 1.0)) {
    throw DomainError("zeta_solve: eps_bar must lie in (0, 1), got " + std::to_string(eps_bar));
  }
  auto f = [&](double u) { return log_g(eps_bar, std::exp(u)); };

  LifespanReport r;
  r.eps_bar = eps_bar;
  double lo = 0.0;
  if (delta_prime_ < 0.0) {
    lo = std::log(stationary_point());
    const double fmin = f(lo);
    if (fmin > 0.0) {
      throw NoRootError("zeta_solve: no root, min g = " + std::to_string(std::exp(fmin)) +
                            " > 1",
                        std::exp(fmin));
    }
    r.branch_note = "larger of two roots (delta' < 0), bracketed above the stationary point";
  } else {
    double step = 1.0;
    while (f(lo) >= 0.0) {
      lo -= step;
      step *= 2.0;
      if (lo < -700.0) throw NoRootError("zeta_solve: lower bracket not found", 0.0);
    }
    r.branch_note = "unique root (delta' >= 0, g increasing)";
  }
  double hi = lo + 1.0;
  double step = 1.0;
  while (f(hi) <= 0.0) {
    lo = hi;
    step *= 2.0;
    hi += step;
    if (hi > 700.0) throw NoRootError("zeta_solve: upper bracket not found", 0.0);
  }
  for (int i = 0; i < kMaxBisection; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  // Pick the endpoint with the smaller residual.
  const double u = std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
  r.zeta = std::exp(u);
  r.bound = 3.0 * r.zeta;
  r.residual = std::abs(std::expm1(log_g(eps_bar, r.zeta)));
  r.asymptote_c = asymptote_c();
  r.asymptote = std::log(1.0 / eps_bar) >= 1.0 ? log_asymptote(eps_bar)
                                               : std::numeric_limits<double>::quiet_NaN();
  return r;
}

double LifespanSolver::asymptote_c() const {
  double slack = 1.0;  // 1 + η
  if (delta_prime_ < 0.0) {
    // |δ'| log ζ ≤ log C_δ + κζ^a/2, hence κζ^a ≤ 2(log(1/ε̄) + log C_δ).
    const double d = -delta_prime_;
    const double log_c_delta = d / power_ * (std::log(2.0 * d / (kappa_ * power_)) - 1.0);
    slack = 2.0 * (1.0 + std::max(0.0, log_c_delta));
  }
  return std::pow(slack / kappa_, 1.0 / power_);
}

double LifespanSolver::log_asymptote(double eps_bar) const {
  if (!(eps_bar > 0.0 && eps_bar < std::exp(-1.0))) {
    throw DomainError("log_asymptote: eps must lie in (0, 1/e)");
  }
  return asymptote_c() * std::pow(std::log(1.0 / eps_bar), 1.0 / power_);
}

double assemble_C(const ProblemParams& params, const comparison::EnvelopeConstants& k) {
  const double p = params.p();
  const double delta = (p - 1.0) / 4.0;
  const double m0 = CoefficientSet(params).multiplier_floor();
  const double inner = delta * m0 * std::sqrt(k.C1) / (2.0 * std::sqrt(p + 1.0));
  return k.C2 * std::pow(inner, 2.0 / (p - 1.0));
}

TheoremChain::TheoremChain(const ProblemParams& params, comparison::DataNorms norms)
    : params_(params),
      norms_(norms),
      setup_(params, norms),
      envelope_(comparison::calibrate_envelope(setup_)),
      solver_(params),
      C_(assemble_C(params, envelope_)) {
  T0_tilde_ = std::max(envelope_.T1, envelope_.T2);
  const double m0 = CoefficientSet(params).multiplier_floor();
  T1_tilde_ = norms.g_l1 > 0.0 ? (1.0 / m0) * norms.f_l1 / norms.g_l1
                               : comparison::doubling_time(params);
}

LifespanReport TheoremChain::theorem_bound(double eps) const {
  if (!(eps > 0.0)) throw DomainError("theorem_bound: eps must be > 0");
  const double eps_bar = C_ * eps;
  if (!(eps_bar < 1.0)) {
    throw DomainError("theorem_bound: C*eps = " + std::to_string(eps_bar) +
                      " >= 1 (outside the theorem regime)");
  }
  LifespanReport r = solver_.zeta_solve(eps_bar);
  r.C = C_;
  r.T_tilde = r.zeta - 1.0;
  if (r.zeta < 2.0) r.warnings.emplace_back("zeta < 2: T_tilde = zeta - 1 < 1");
  const double floor = std::max(T0_tilde_, T1_tilde_);
  if (r.T_tilde < floor) {
    r.warnings.emplace_back("zeta - 1 = " + std::to_string(r.T_tilde) +
                            " < max(T0_tilde, T1_tilde) = " + std::to_string(floor) +
                            ": eps above the admissible regime");
    return r;
  }

  const ProblemParams p = params_.with_eps(eps);
  const CoefficientSet coefs(p);
  const comparison::EnvelopeConstants env = envelope_;
  kato::KatoInstance inst;
  inst.log_A = [p, env](double t) { return comparison::log_envelope_A(p, env, t); };
  inst.A = [p, env](double t) { return comparison::envelope_A(p, env, t); };
  inst.B = [p](double t) { return comparison::holder_B(p, t); };
  inst.m = [coefs](double t) { return coefs.multiplier(t); };
  inst.m_lo = coefs.multiplier_floor();
  inst.m_hi = 1.0;
  inst.delta = (p.p() - 1.0) / 4.0;
  inst.p = p.p();
  inst.F0 = eps * norms_.f_l1;
  inst.F0p = eps * norms_.g_l1;
  if (norms_.g_l1 == 0.0) inst.t_double = comparison::doubling_time(p);
  inst.T0_tilde = T0_tilde_;
  try {
    const auto report = kato::certify(inst, r.T_tilde);
    r.kato_condition_ok = report.candidate_ok;
    if (!report.candidate_ok) {
      r.warnings.emplace_back("Kato condition fails at T_tilde = zeta - 1");
    }
  } catch (const HypothesisError& e) {
    r.kato_condition_ok = false;
    r.warnings.emplace_back(std::string("Kato hypothesis violated: ") + e.what());
  }
  return r;
}

}  // namespace wavelab::lifespan
