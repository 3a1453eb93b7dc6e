#include "wavelab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "wavelab/lifespan.hpp"

namespace wavelab::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double midpoint(const SweepRow& r) { return 0.5 * (r.t_blow_lo + r.t_blow_hi); }

bool usable(const SweepRow& r) {
  return std::isfinite(r.t_blow_lo) && std::isfinite(r.t_blow_hi) && r.eps > 0.0 && r.eps < 1.0 &&
         r.status != "no-blowup" && r.status.rfind("error", 0) != 0;
}

}  // namespace

pde::Profile load_profile_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open profile table '" + path + "'");
  std::vector<double> r, f, g;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b, c = 0.0;
    if (!(ss >> a >> b)) {
      if (first) {
        first = false;
        continue;
      }
      throw DomainError("malformed profile row '" + line + "'");
    }
    first = false;
    if (!(ss >> c)) c = 0.0;
    r.push_back(a);
    f.push_back(b);
    g.push_back(c);
  }
  return pde::Profile::table(std::move(r), std::move(f), std::move(g));
}

pde::Profile profile_from_config(const KeyValueConfig& cfg) {
  const std::string kind = cfg.get_string("profile", "bump");
  if (kind == "bump")
    return pde::Profile::bump(cfg.get_double("R", 1.0), cfg.get_int("bump.power", 1),
                              cfg.get_double("bump.f_amp", 1.0), cfg.get_double("bump.g_amp", 0.0));
  if (kind == "table") {
    const auto path = cfg.get("profile.table");
    if (!path) throw DomainError("profile = table needs profile.table");
    return load_profile_table(*path);
  }
  throw DomainError("unknown profile '" + kind + "'");
}

pde::RunOptions run_options_from_config(const KeyValueConfig& cfg) {
  pde::RunOptions run;
  run.t_max = cfg.get_double("t_max", run.t_max);
  run.U_max = cfg.get_double("U_max", run.U_max);
  run.dt_min = cfg.get_double("dt_min", run.dt_min);
  run.growth_limit = cfg.get_double("growth_limit", run.growth_limit);
  run.record_interval = cfg.get_double("record_interval", run.record_interval);
  run.support_floor = cfg.get_double("support_floor", run.support_floor);
  return run;
}

std::vector<double> geometric_eps_grid(double start, double stop, int count) {
  if (count < 3) throw DomainError("eps grid needs at least 3 points");
  if (!(start < 1.0 && stop > 0.0 && start > stop))
    throw DomainError("eps grid needs 1 > start > stop > 0");
  std::vector<double> g(count);
  const double ratio = std::log(stop / start) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = start * std::exp(ratio * i);
  g.front() = start;
  g.back() = stop;
  return g;
}

void SweepPlan::validate() const {
  if (eps_grid.size() < 3) throw DomainError("eps grid needs at least 3 points");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0 && eps_grid[i] < 1.0)) throw DomainError("eps grid must lie in (0,1)");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw DomainError("eps grid must be strictly decreasing");
  }
  if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
  ProblemParams check(params);
  profile.validate(check.R());
}

std::string classify_row(double C, double eps, bool blew_up, double t_blow_hi,
                         double bound_3zeta, double slack) {
  if (!(C * eps < 1.0)) return "outside-theorem-regime";
  if (!blew_up) return "no-blowup";
  if (t_blow_hi > bound_3zeta * (1.0 + slack)) return "inconsistent";
  return "ok";
}

SweepTable run_sweep(const SweepPlan& plan) {
  plan.validate();
  const ProblemParams base(plan.params);
  const lifespan::TheoremChain chain(base, plan.profile.norms(base.n()));

  SweepTable table;
  table.C = chain.C();
  table.asymptote_c = chain.solver().asymptote_c();
  table.exponent = 2.0 / (1.0 - base.alpha());
  table.rows.resize(plan.eps_grid.size());

  auto run_row = [&](std::size_t k) {
    SweepRow row;
    row.eps = plan.eps_grid[k];
    row.t_blow_lo = row.t_blow_hi = kNaN;
    row.zeta = row.bound_3zeta = row.asymptote = kNaN;
    try {
      const ProblemParams params = base.with_eps(row.eps);
      const auto grid = pde::RadialGrid::for_horizon(params.n(), plan.dr, plan.t_max, params.R());
      const pde::RadialWaveSolver solver(params, grid, {plan.cfl, true});
      pde::RunOptions run;
      run.t_max = plan.t_max;
      run.record_interval = plan.t_max;  // only endpoints are needed here
      const auto trace = solver.run_until_blowup(plan.profile, run);
      if (trace.blow_up) {
        row.t_blow_lo = trace.blow_up->t_lo;
        row.t_blow_hi = trace.blow_up->t_hi;
      }
      if (chain.C() * row.eps < 1.0) {
        const auto rep = chain.theorem_bound(row.eps);
        row.zeta = rep.zeta;
        row.bound_3zeta = rep.bound;
        row.asymptote = rep.asymptote;
      }
      row.status = classify_row(chain.C(), row.eps, trace.blow_up.has_value(), row.t_blow_hi,
                                row.bound_3zeta, plan.slack);
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    table.rows[k] = row;
  };

  unsigned workers = plan.workers > 0 ? static_cast<unsigned>(plan.workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(plan.eps_grid.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < plan.eps_grid.size(); k = next++) run_row(k);
    });
  for (auto& t : pool) t.join();
  return table;
}

bool theorem_consistent(const SweepTable& table, double slack) {
  for (const auto& r : table.rows) {
    if (r.status.rfind("error", 0) == 0) return false;
    if (std::isnan(r.bound_3zeta) || std::isnan(r.t_blow_hi)) continue;
    if (r.t_blow_hi > r.bound_3zeta * (1.0 + slack)) return false;
  }
  return true;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << "eps,t_blow_lo,t_blow_hi,zeta,bound_3zeta,asymptote,status\n";
  for (const auto& r : table.rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    os << fmt(r.eps) << ',' << fmt(r.t_blow_lo) << ',' << fmt(r.t_blow_hi) << ',' << fmt(r.zeta)
       << ',' << fmt(r.bound_3zeta) << ',' << fmt(r.asymptote) << ',' << status << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("empty sweep table");
  std::vector<SweepRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 7) throw DomainError("malformed sweep row at line " + std::to_string(lineno));
    auto num = [&](const std::string& s) {
      if (s == "nan") return kNaN;
      try {
        return std::stod(s);
      } catch (const std::exception&) {
        throw DomainError("bad number '" + s + "' at line " + std::to_string(lineno));
      }
    };
    SweepRow r;
    r.eps = num(cells[0]);
    r.t_blow_lo = num(cells[1]);
    r.t_blow_hi = num(cells[2]);
    r.zeta = num(cells[3]);
    r.bound_3zeta = num(cells[4]);
    r.asymptote = num(cells[5]);
    r.status = cells[6];
    rows.push_back(r);
  }
  return rows;
}

FitResult fit_lifespan_curve(const std::vector<SweepRow>& rows, double alpha) {
  if (!(alpha < 1.0)) throw DomainError("alpha must be < 1");
  const double k = 2.0 / (1.0 - alpha);
  double sxy = 0.0, sxx = 0.0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (!usable(r)) continue;
    const double x = std::pow(std::log(1.0 / r.eps), k);
    const double y = midpoint(r);
    pts.emplace_back(x, y);
    sxy += x * y;
    sxx += x * x;
  }
  if (pts.size() < 3)
    throw InsufficientDataError("lifespan fit needs at least 3 blow-up rows, got " +
                                std::to_string(pts.size()));
  FitResult f;
  f.exponent_fixed = k;
  f.c_fit = sxy / sxx;
  double ss = 0.0;
  for (auto [x, y] : pts) {
    const double rel = (f.c_fit * x - y) / y;
    ss += rel * rel;
  }
  f.residual_rms = std::sqrt(ss / pts.size());
  f.points_used = static_cast<int>(pts.size());
  return f;
}

FreeFit fit_free_exponent(const std::vector<SweepRow>& rows) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (const auto& r : rows) {
    if (!usable(r) || r.eps >= 1.0 / M_E) continue;
    const double x = std::log(std::log(1.0 / r.eps));
    const double y = std::log(midpoint(r));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 3) throw InsufficientDataError("free-exponent fit needs at least 3 rows with eps < 1/e");
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-14 * std::max(1.0, m * sxx))
    throw SingularSystemError("free-exponent fit: degenerate eps grid");
  FreeFit f;
  f.exponent = (m * sxy - sx * sy) / det;
  f.c = std::exp((sy - f.exponent * sx) / m);
  f.points_used = m;
  return f;
}

}  // namespace wavelab::harness
