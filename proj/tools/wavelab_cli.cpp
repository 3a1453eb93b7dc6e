#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavelab/comparison.hpp"
#include "wavelab/config.hpp"
#include "wavelab/harness.hpp"
#include "wavelab/kato.hpp"
#include "wavelab/lifespan.hpp"
#include "wavelab/pde.hpp"
#include "wavelab/specfun.hpp"

using json = nlohmann::json;
using namespace wavelab;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Config file plus parameter flags; flags win.
struct ParamSource {
  std::string config_path;
  std::map<std::string, std::string> flags;

  void attach(CLI::App* sub, bool with_eps = true) {
    sub->add_option("--config", config_path, "key = value parameter file");
    for (const char* key : {"n", "p", "alpha", "beta", "mu1", "mu2", "R"})
      sub->add_option(std::string("--") + key, flags[key], std::string("override ") + key);
    if (with_eps) sub->add_option("--eps", flags["eps"], "override eps");
  }

  KeyValueConfig load() const {
    KeyValueConfig cfg = config_path.empty() ? KeyValueConfig{} : KeyValueConfig::load(config_path);
    for (const auto& [k, v] : flags)
      if (!v.empty()) cfg.set(k, v);
    return cfg;
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot write '" + path + "'");
  return os;
}

std::string sidecar_path(const std::string& out) { return out + ".json"; }

int cmd_besselfn(const std::string& kind, double nu, double x) {
  json j{{"kind", kind}, {"nu", nu}, {"x", x}};
  if (kind == "i") {
    j["log_value"] = specfun::log_bessel_i(nu, x);
    double v = kNaN;
    try {
      v = specfun::bessel_i(nu, x);
    } catch (const RangeError&) {
    }
    j["value"] = num(v);
  } else {
    j["log_value"] = specfun::log_bessel_k(nu, x);
    double v = kNaN;
    try {
      v = specfun::bessel_k(nu, x);
    } catch (const RangeError&) {
    }
    j["value"] = num(v);
  }
  std::cout << j.dump() << '\n';
  return 0;
}

double trace_value(const ode::BlowupResult& r, double t) {
  const auto& tr = r.trace;
  if (tr.empty() || t < tr.front().t || t > tr.back().t) return kNaN;
  std::size_t lo = 0, hi = tr.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (tr[mid].t <= t ? lo : hi) = mid;
  }
  if (tr[hi].t == tr[lo].t) return tr[lo].F;
  // Cubic Hermite between trace points.
  const double h = tr[hi].t - tr[lo].t;
  const double s = (t - tr[lo].t) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * tr[lo].F + h10 * h * tr[lo].dF + h01 * tr[hi].F + h11 * h * tr[hi].dF;
}

int cmd_compare(const ParamSource& src, double t_end, const std::string& out) {
  const auto cfg = src.load();
  const auto params = params_from_config(cfg);
  const auto profile = harness::profile_from_config(cfg);
  profile.validate(params.R());
  const auto norms = profile.norms(params.n());
  const comparison::ComparisonSetup setup =
      cfg.has("t0") ? comparison::ComparisonSetup(params, norms, cfg.require_double("t0"))
                    : comparison::ComparisonSetup(params, norms);
  const auto env = comparison::calibrate_envelope(setup);
  const double dt = cfg.get_double("compare.dt", 0.05);
  if (!(t_end > setup.t0())) throw DomainError("--t-end must exceed t0 = " + fmt(setup.t0()));
  const auto ode = comparison::f0_lower_ode(params, params.eps() * norms.f_l1,
                                            params.eps() * norms.g_l1, t_end);
  auto os = open_out(out);
  os << "t,J,A,F0_ode\n";
  const long count = static_cast<long>(std::floor((t_end - setup.t0()) / dt + 1e-9));
  for (long k = 0; k <= count; ++k) {
    const double t = setup.t0() + k * dt;
    const double A = t >= env.T1 ? comparison::envelope_A(params, env, t) : kNaN;
    os << fmt(t) << ',' << fmt(setup.J_eval(t)) << ',' << fmt(A) << ',' << fmt(trace_value(ode, t))
       << '\n';
  }
  json meta{{"t0", setup.t0()},   {"c_plus", setup.c_plus()}, {"c_minus", setup.c_minus()},
            {"C1", env.C1},       {"C2", env.C2},             {"T1", env.T1},
            {"T2", env.T2},       {"ode_blow_up", ode.blow_up}};
  if (ode.blow_up) meta["ode_bracket"] = {ode.t_lo, ode.t_hi};
  open_out(sidecar_path(out)) << meta.dump(2) << '\n';
  return 0;
}

kato::TimeFn template_fn(const KeyValueConfig& cfg, const std::string& name,
                         const std::string& fallback_kind, double sign) {
  const std::string kind = cfg.get_string(name + ".kind", fallback_kind);
  const double a = cfg.get_double(name + ".a", 1.0);
  const double k = cfg.get_double(name + ".k", 0.0);
  const double s = cfg.get_double(name + ".s", 1.0);
  if (kind == "power") return [=](double t) { return a * std::pow(1.0 + t, sign * k); };
  if (kind == "exp") return [=](double t) { return a * std::exp(sign * k * std::pow(1.0 + t, s)); };
  throw DomainError(name + ".kind must be power or exp");
}

int cmd_kato_check(const ParamSource& src) {
  const auto cfg = src.load();
  kato::KatoInstance inst;
  inst.p = cfg.get_double("p", 2.0);
  inst.delta = cfg.get_double("delta", (inst.p - 1.0) / 4.0);
  inst.F0 = cfg.get_double("F0", 1.0);
  inst.F0p = cfg.get_double("F0p", 0.0);
  if (cfg.has("t_double")) inst.t_double = cfg.require_double("t_double");
  inst.T0_tilde = cfg.get_double("T0", 0.0);
  // A grows, B decays.
  inst.A = template_fn(cfg, "A", "power", 1.0);
  inst.B = template_fn(cfg, "B", "power", -1.0);
  const std::string mkind = cfg.get_string("m.kind", "const");
  if (mkind == "const") {
    const double v = cfg.get_double("m.value", 1.0);
    inst.m = [v](double) { return v; };
    inst.m_lo = inst.m_hi = v;
  } else if (mkind == "multiplier") {
    const double mu = cfg.get_double("m.mu", 0.0);
    const double beta = cfg.get_double("m.beta", 2.0);
    if (!(beta > 1.0)) throw DomainError("m.beta must exceed 1");
    inst.m = [=](double t) { return std::exp(mu * std::pow(1.0 + t, 1.0 - beta) / (1.0 - beta)); };
    inst.m_lo = inst.m(0.0);
    inst.m_hi = 1.0;
  } else {
    throw DomainError("m.kind must be const or multiplier");
  }
  kato::validate(inst);
  const double T1 = kato::compute_T1_tilde(inst);
  const double candidate = cfg.get_double("candidate", std::max(inst.T0_tilde, T1));
  const auto rep = kato::certify(inst, candidate);
  json j{{"T0_tilde", rep.T0_tilde}, {"T1_tilde", rep.T1_tilde},     {"candidate", rep.candidate},
         {"candidate_ok", rep.candidate_ok}, {"T_tilde", rep.T_tilde}, {"bound", rep.bound},
         {"condition_ok", rep.condition_ok}, {"log_lhs", rep.log_lhs}, {"log_rhs", rep.log_rhs}};
  if (cfg.get_int("oracle", 0) != 0) {
    const auto orc = kato::ode_blowup_oracle(inst.m, inst.B, inst.p, inst.F0, inst.F0p,
                                             10.0 * rep.bound);
    j["oracle"] = {{"blow_up", orc.blow_up}, {"t_lo", orc.t_lo}, {"t_hi", orc.t_hi}};
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

json report_json(const lifespan::LifespanReport& r) {
  json j{{"eps_bar", r.eps_bar},     {"zeta", r.zeta},
         {"bound_3zeta", r.bound},   {"residual", r.residual},
         {"asymptote_c", r.asymptote_c}, {"asymptote", num(r.asymptote)},
         {"branch", r.branch_note},  {"warnings", r.warnings}};
  if (r.C > 0.0) {
    j["C"] = r.C;
    j["T_tilde"] = r.T_tilde;
  }
  if (r.kato_condition_ok) j["kato_condition_ok"] = *r.kato_condition_ok;
  return j;
}

int cmd_lifespan(const ParamSource& src, std::optional<double> eps_bar) {
  const auto cfg = src.load();
  const auto params = params_from_config(cfg);
  if (eps_bar) {
    const lifespan::LifespanSolver solver(params);
    std::cout << report_json(solver.zeta_solve(*eps_bar)).dump() << '\n';
    return 0;
  }
  const auto profile = harness::profile_from_config(cfg);
  profile.validate(params.R());
  const lifespan::TheoremChain chain(params, profile.norms(params.n()));
  std::cout << report_json(chain.theorem_bound(params.eps())).dump() << '\n';
  return 0;
}

int cmd_simulate(const ParamSource& src, const std::string& out) {
  const auto cfg = src.load();
  const auto params = params_from_config(cfg);
  const auto profile = harness::profile_from_config(cfg);
  const auto run = harness::run_options_from_config(cfg);
  const double dr = cfg.get_double("dr", 0.02);
  const auto grid = pde::RadialGrid::for_horizon(params.n(), dr, run.t_max, params.R());
  const pde::RadialWaveSolver solver(params, grid, {cfg.get_double("cfl", 0.5), true});
  const auto tr = solver.run_until_blowup(profile, run);
  auto os = open_out(out);
  os << "t,F0,energy,support_radius,u_max\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k)
    os << fmt(tr.times[k]) << ',' << fmt(tr.F0[k]) << ',' << fmt(tr.energy[k]) << ','
       << fmt(tr.support_radius[k]) << ',' << fmt(tr.u_max[k]) << '\n';
  json meta{{"blow_up", tr.blow_up.has_value()},
            {"t_lo", tr.blow_up ? json(tr.blow_up->t_lo) : json(nullptr)},
            {"t_hi", tr.blow_up ? json(tr.blow_up->t_hi) : json(nullptr)},
            {"steps", tr.steps},
            {"dr", tr.dr},
            {"dt_final", tr.dt_final}};
  open_out(sidecar_path(out)) << meta.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const ParamSource& src, double start, double stop, int count,
              const std::string& out) {
  const auto cfg = src.load();
  harness::SweepPlan plan;
  plan.params = params_from_config(cfg).values();
  plan.eps_grid = harness::geometric_eps_grid(start, stop, count);
  plan.t_max = cfg.get_double("t_max", plan.t_max);
  plan.dr = cfg.get_double("dr", plan.dr);
  plan.cfl = cfg.get_double("cfl", plan.cfl);
  plan.profile = harness::profile_from_config(cfg);
  plan.workers = cfg.get_int("workers", 0);
  const auto table = harness::run_sweep(plan);
  {
    auto os = open_out(out);
    harness::write_sweep_csv(os, table);
  }
  const bool ok = harness::theorem_consistent(table, plan.slack);
  json meta{{"C", table.C},
            {"asymptote_c", table.asymptote_c},
            {"exponent", table.exponent},
            {"t_max", plan.t_max},
            {"dr", plan.dr},
            {"consistent", ok}};
  open_out(sidecar_path(out)) << meta.dump(2) << '\n';
  for (const auto& r : table.rows)
    if (r.status != "ok") std::cerr << "eps " << fmt(r.eps) << ": " << r.status << '\n';
  return ok ? 0 : 1;
}

int cmd_fit(const std::string& in_path, double alpha, bool free_exponent) {
  std::ifstream in(in_path);
  if (!in) throw DomainError("cannot open '" + in_path + "'");
  const auto rows = harness::read_sweep_csv(in);
  const auto fit = harness::fit_lifespan_curve(rows, alpha);
  json j{{"c_fit", fit.c_fit},
         {"exponent_fixed", fit.exponent_fixed},
         {"residual_rms", fit.residual_rms},
         {"points_used", fit.points_used}};
  if (free_exponent) {
    const auto ff = harness::fit_free_exponent(rows);
    j["free"] = {{"c", ff.c}, {"exponent", ff.exponent}, {"points_used", ff.points_used}};
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blow-up laboratory for damped wave equations with negative mass"};
  app.require_subcommand(1);

  std::string kind = "i";
  double nu = 0.0, x = 0.0;
  auto* bes = app.add_subcommand("besselfn", "Modified Bessel function value and log-value");
  bes->add_option("--kind", kind)->check(CLI::IsMember({"i", "k"}));
  bes->add_option("--nu", nu)->required();
  bes->add_option("--x", x)->required();

  ParamSource cmp_src;
  double t_end = 20.0;
  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "Comparison solution J, envelope A and F0 ODE");
  cmp_src.attach(cmp);
  cmp->add_option("--t-end", t_end);
  cmp->add_option("--out", cmp_out)->required();

  ParamSource kato_src;
  auto* kc = app.add_subcommand("kato-check", "Certify a Kato-lemma instance");
  kc->add_option("--config", kato_src.config_path)->required();

  ParamSource life_src;
  double eps_bar = kNaN;
  auto* life = app.add_subcommand("lifespan", "Solve the lifespan equation");
  life_src.attach(life);
  auto* eb = life->add_option("--eps-bar", eps_bar, "solve for this eps-bar directly");
  eb->excludes(life->get_option("--eps"));

  ParamSource sim_src;
  std::string sim_out;
  auto* sim = app.add_subcommand("simulate", "Run the radial PDE until blow-up");
  sim_src.attach(sim);
  sim->add_option("--out", sim_out)->required();

  ParamSource sw_src;
  double e_start = 0.5, e_stop = 0.01;
  int e_count = 6;
  std::string sw_out;
  auto* sw = app.add_subcommand("sweep", "Lifespan sweep over eps");
  sw_src.attach(sw, false);
  sw->add_option("--eps-start", e_start);
  sw->add_option("--eps-stop", e_stop);
  sw->add_option("--eps-count", e_count);
  sw->add_option("--out", sw_out)->required();

  std::string fit_in;
  double fit_alpha = 0.0;
  bool fit_free = false;
  auto* ft = app.add_subcommand("fit", "Fit T = c [log(1/eps)]^(2/(1-alpha)) to a sweep table");
  ft->add_option("--in", fit_in)->required();
  ft->add_option("--alpha", fit_alpha);
  ft->add_flag("--free-exponent", fit_free, "also fit the exponent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bes) return cmd_besselfn(kind, nu, x);
    if (*cmp) return cmd_compare(cmp_src, t_end, cmp_out);
    if (*kc) return cmd_kato_check(kato_src);
    if (*life)
      return cmd_lifespan(life_src, std::isnan(eps_bar) ? std::nullopt : std::optional(eps_bar));
    if (*sim) return cmd_simulate(sim_src, sim_out);
    if (*sw) return cmd_sweep(sw_src, e_start, e_stop, e_count, sw_out);
    if (*ft) return cmd_fit(fit_in, fit_alpha, fit_free);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
