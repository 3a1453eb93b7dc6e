#include "wavelab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace wavelab::pde {

namespace {

double bump_shape(double r, double R, int power) {
  const double x = r / R;
  if (x >= 1.0) return 0.0;
  return std::pow(1.0 - x * x, power);
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x < xs.front() || x > xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return ys.back();
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  if (j == 0) return ys.front();
  const double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return (1.0 - w) * ys[j - 1] + w * ys[j];
}

}  // namespace

Profile Profile::bump(double R, int power, double f_amp, double g_amp) {
  if (!(R > 0.0) || power < 1) throw DomainError("bump profile needs R > 0 and power >= 1");
  Profile p;
  p.kind_ = Kind::bump;
  p.R_ = R;
  p.power_ = power;
  p.f_amp_ = f_amp;
  p.g_amp_ = g_amp;
  p.support_ = R;
  return p;
}

Profile Profile::table(std::vector<double> r, std::vector<double> f, std::vector<double> g) {
  if (r.size() < 2 || f.size() != r.size() || g.size() != r.size())
    throw DomainError("profile table needs at least two rows of equal length");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1])) throw DomainError("profile table radii must be increasing");
  if (r.front() < 0.0) throw DomainError("profile table radii must be non-negative");
  Profile p;
  p.kind_ = Kind::table;
  p.r_ = std::move(r);
  p.f_ = std::move(f);
  p.g_ = std::move(g);
  p.support_ = 0.0;
  for (std::size_t i = 0; i < p.r_.size(); ++i)
    if (p.f_[i] != 0.0 || p.g_[i] != 0.0)
      p.support_ = (i + 1 < p.r_.size()) ? p.r_[i + 1] : p.r_[i];
  return p;
}

double Profile::f(double r) const {
  if (kind_ == Kind::bump) return f_amp_ * bump_shape(r, R_, power_);
  return interp(r_, f_, r);
}

double Profile::g(double r) const {
  if (kind_ == Kind::bump) return g_amp_ * bump_shape(r, R_, power_);
  return interp(r_, g_, r);
}

void Profile::validate(double R) const {
  if (kind_ == Kind::bump) {
    if (f_amp_ < 0.0 || g_amp_ < 0.0) throw DomainError("initial data must be non-negative");
    if (f_amp_ == 0.0 && g_amp_ == 0.0) throw DomainError("initial data vanish identically");
  } else {
    bool nonzero = false;
    for (std::size_t i = 0; i < r_.size(); ++i) {
      if (f_[i] < 0.0 || g_[i] < 0.0) throw DomainError("initial data must be non-negative");
      nonzero = nonzero || f_[i] > 0.0 || g_[i] > 0.0;
    }
    if (!nonzero) throw DomainError("initial data vanish identically");
  }
  if (support_ > R * (1.0 + 1e-12))
    throw DomainError("initial data support " + std::to_string(support_) + " exceeds R = " +
                      std::to_string(R));
}

comparison::DataNorms Profile::norms(int n) const {
  const int panels = 200000;
  const double h = support_ / panels;
  double sf = 0.0, sg = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double r = i * h;
    const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
    const double jac = std::pow(r, n - 1);
    sf += w * std::abs(f(r)) * jac;
    sg += w * std::abs(g(r)) * jac;
  }
  const double area = comparison::unit_sphere_area(n);
  return {area * sf * h, area * sg * h};
}

RadialGrid RadialGrid::for_horizon(int n, double dr, double t_end, double R) {
  if (!(dr > 0.0)) throw DomainError("grid spacing must be positive");
  RadialGrid g;
  g.n = n;
  g.dr = dr;
  const double reach = t_end + R + 10.0 * dr;
  g.points = static_cast<int>(std::ceil(reach / dr)) + 1;
  g.r_max = (g.points - 1) * dr;
  return g;
}

RadialWaveSolver::RadialWaveSolver(const ProblemParams& params, const RadialGrid& grid,
                                   SolverOptions opts)
    : params_(params), grid_(grid), opts_(opts), coefs_(params) {
  if (grid_.n != params_.n()) throw DomainError("grid dimension does not match n");
  if (grid_.points < 3) throw DomainError("grid needs at least three points");
  if (!(opts_.cfl > 0.0) || opts_.cfl > 0.5)
    throw DomainError("CFL number must lie in (0, 0.5], got " + std::to_string(opts_.cfl));
  const int n = grid_.n;
  const double dr = grid_.dr;
  volume_.resize(grid_.points);
  face_.resize(grid_.points);
  for (int i = 0; i < grid_.points; ++i) {
    const double rp = (i + 0.5) * dr;
    const double rm = std::max(0.0, (i - 0.5) * dr);
    volume_[i] = (std::pow(rp, n) - std::pow(rm, n)) / n;
    face_[i] = std::pow(rp, n - 1);
  }
  sphere_area_ = comparison::unit_sphere_area(n);
}

double RadialWaveSolver::laplacian(const std::vector<double>& u, int i) const {
  const double dr = grid_.dr;
  const double right = face_[i] * (u[i + 1] - u[i]);
  const double left = i > 0 ? face_[i - 1] * (u[i] - u[i - 1]) : 0.0;
  return (right - left) / (dr * volume_[i]);
}

double RadialWaveSolver::source(double u, double t) const {
  double s = coefs_.mass_coeff(t) * u;
  if (opts_.nonlinear) {
    const double a = std::abs(u);
    const double p = params_.p();
    s += (p == 2.0) ? a * a : (p == 3.0 ? a * a * a : std::pow(a, p));
  }
  return s;
}

FieldState RadialWaveSolver::init_data(const Profile& profile) const {
  profile.validate(params_.R());
  const int N = grid_.points;
  const double eps = params_.eps();
  FieldState s;
  s.u_prev.assign(N, 0.0);
  std::vector<double> v(N, 0.0);
  for (int i = 0; i + 1 < N; ++i) {
    s.u_prev[i] = eps * profile.f(grid_.r(i));
    v[i] = eps * profile.g(grid_.r(i));
  }
  const double dt = opts_.cfl * grid_.dr;
  const double b0 = coefs_.damping_coeff(0.0);
  s.u.assign(N, 0.0);
  for (int i = 0; i + 1 < N; ++i) {
    const double acc = laplacian(s.u_prev, i) + source(s.u_prev[i], 0.0) - b0 * v[i];
    s.u[i] = s.u_prev[i] + dt * v[i] + 0.5 * dt * dt * acc;
  }
  s.t = dt;
  s.dt = dt;
  s.dt_prev = dt;
  int front = 0;
  for (int i = 0; i + 1 < N; ++i)
    if (s.u_prev[i] != 0.0 || v[i] != 0.0) front = i;
  s.front = std::min(N - 2, front + 1);
  return s;
}

void RadialWaveSolver::step_in_place(FieldState& s, std::vector<double>& next) const {
  const int N = grid_.points;
  const double hp = s.dt;
  const double hm = s.dt_prev;
  const double b = coefs_.damping_coeff(s.t);
  const double mass = coefs_.mass_coeff(s.t);
  const double half = 0.5 * (hp + hm);
  const double denom = 1.0 / hp + 0.5 * b;
  const bool nonlinear = opts_.nonlinear;
  const double p = params_.p();
  const double dr = grid_.dr;
  // Entries past the front stay zero in every buffer, so only the cone is touched.
  if (static_cast<int>(next.size()) != N) next.assign(N, 0.0);
  const int last = s.front < 0 ? N - 2 : std::min(N - 2, s.front + 1);
  for (int i = 0; i <= last; ++i) {
    const double ui = s.u[i];
    const double right = face_[i] * (s.u[i + 1] - ui);
    const double left = i > 0 ? face_[i - 1] * (ui - s.u[i - 1]) : 0.0;
    double rhs = (right - left) / (dr * volume_[i]) + mass * ui;
    if (nonlinear) {
      const double a = std::abs(ui);
      rhs += (p == 2.0) ? a * a : (p == 3.0 ? a * a * a : std::pow(a, p));
    }
    const double um = s.u_prev[i];
    next[i] = (ui / hp + (ui - um) / hm + 0.5 * b * um + half * rhs) / denom;
  }
  std::swap(s.u_prev, s.u);
  std::swap(s.u, next);
  s.t += hp;
  s.dt_prev = hp;
  if (s.front >= 0) {
    int f = last;
    while (f > 0 && s.u[f] == 0.0 && s.u_prev[f] == 0.0) --f;
    s.front = f;
  }
}

FieldState RadialWaveSolver::step(const FieldState& state) const {
  FieldState s = state;
  std::vector<double> scratch;
  step_in_place(s, scratch);
  return s;
}

double RadialWaveSolver::functional_F0(const std::vector<double>& u) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += volume_[i] * u[i];
  return sphere_area_ * sum;
}

double RadialWaveSolver::functional_F0(const FieldState& state) const {
  return functional_F0(state.u);
}

double RadialWaveSolver::energy(const FieldState& s) const {
  const int N = grid_.points;
  const double dr = grid_.dr;
  double kinetic = 0.0, gradient = 0.0;
  for (int i = 0; i < N; ++i) {
    const double ut = (s.u[i] - s.u_prev[i]) / s.dt_prev;
    kinetic += volume_[i] * ut * ut;
    if (i + 1 < N) {
      // Cross product of adjacent levels: conserved by the free leapfrog scheme.
      const double ur = (s.u[i + 1] - s.u[i]) / dr;
      const double ur_prev = (s.u_prev[i + 1] - s.u_prev[i]) / dr;
      gradient += face_[i] * dr * ur * ur_prev;
    }
  }
  return 0.5 * sphere_area_ * (kinetic + gradient);
}

double RadialWaveSolver::support_radius(const FieldState& s, double floor) const {
  for (int i = grid_.points - 1; i >= 0; --i)
    if (std::abs(s.u[i]) > floor) return grid_.r(i);
  return 0.0;
}

SimulationTrace RadialWaveSolver::run_until_blowup(const Profile& profile,
                                                   const RunOptions& run) const {
  if (grid_.r_max < run.t_max + params_.R() + 2.0 * grid_.dr)
    throw DomainError("grid radius too small for the requested horizon");
  SimulationTrace tr;
  tr.params = params_.values();
  tr.dr = grid_.dr;
  const double rate_exp = 0.5 * (params_.p() - 1.0);

  auto sup = [](const std::vector<double>& u, int front = -1) {
    const int end = front < 0 ? static_cast<int>(u.size()) : front + 1;
    double m = 0.0;
    for (int i = 0; i < end; ++i) {
      if (!std::isfinite(u[i])) return std::numeric_limits<double>::infinity();
      m = std::max(m, std::abs(u[i]));
    }
    return m;
  };

  FieldState s = init_data(profile);
  double last_record = -1e300;
  auto record = [&](const std::vector<double>& u, const std::vector<double>& u_prev, double t,
                    double dt_prev, double umax, bool force) {
    if (!force && run.record_interval > 0.0 && t - last_record < run.record_interval) return;
    FieldState view;
    view.u = u;
    view.u_prev = u_prev;
    view.dt_prev = dt_prev;
    view.t = t;
    tr.times.push_back(t);
    tr.F0.push_back(functional_F0(u));
    tr.energy.push_back(energy(view));
    tr.support_radius.push_back(support_radius(view, run.support_floor));
    tr.u_max.push_back(umax);
    last_record = t;
  };

  {
    // t = 0 row; u_t(0) = εg is not stored, so the kinetic term uses the first step.
    FieldState zero;
    zero.u = s.u_prev;
    zero.u_prev = s.u_prev;
    zero.dt_prev = s.dt;
    tr.times.push_back(0.0);
    tr.F0.push_back(functional_F0(s.u_prev));
    std::vector<double> v(grid_.points, 0.0);
    for (int i = 0; i + 1 < grid_.points; ++i) v[i] = params_.eps() * profile.g(grid_.r(i));
    double kinetic = 0.0, gradient = 0.0;
    for (int i = 0; i < grid_.points; ++i) {
      kinetic += volume_[i] * v[i] * v[i];
      if (i + 1 < grid_.points) {
        const double ur = (s.u_prev[i + 1] - s.u_prev[i]) / grid_.dr;
        gradient += face_[i] * grid_.dr * ur * ur;
      }
    }
    tr.energy.push_back(0.5 * sphere_area_ * (kinetic + gradient));
    tr.support_radius.push_back(support_radius(zero, run.support_floor));
    tr.u_max.push_back(sup(s.u_prev));
    last_record = 0.0;
  }

  std::vector<double> scratch;
  tr.steps = 1;
  double t_safe = 0.0;
  double umax = sup(s.u, s.front);
  while (true) {
    if (umax > run.U_max) {
      tr.blow_up = BlowupBracket{t_safe, s.t};
      break;
    }
    t_safe = s.t;
    if (s.t >= run.t_max) {
      record(s.u, s.u_prev, s.t, s.dt_prev, umax, true);
      break;
    }
    record(s.u, s.u_prev, s.t, s.dt_prev, umax, false);
    const double rate = std::max(umax, std::pow(umax, rate_exp));
    while (rate * s.dt > run.growth_limit && s.dt >= run.dt_min) s.dt *= 0.5;
    if (s.dt < run.dt_min) {
      tr.blow_up = BlowupBracket{s.t, s.t + s.dt};
      break;
    }
    s.dt = std::min(s.dt, run.t_max - s.t + 1e-15 * run.t_max);
    if (s.dt <= 0.0) s.dt = run.t_max - s.t;
    step_in_place(s, scratch);
    ++tr.steps;
    umax = sup(s.u, s.front);
  }
  if (tr.blow_up && std::isfinite(umax)) record(s.u, s.u_prev, s.t, s.dt_prev, umax, true);
  tr.dt_final = s.dt_prev;
  return tr;
}

ComparisonReport verify_comparison(const SimulationTrace& trace,
                                   const comparison::ComparisonSetup& setup, double tol) {
  ComparisonReport rep;
  const double t_end = trace.blow_up ? trace.blow_up->t_lo : trace.times.back();
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    const double t = trace.times[k];
    if (t < setup.t0() || t > t_end) continue;
    const double J = setup.J_eval(t);
    if (!std::isfinite(J)) break;
    const double rel = (trace.F0[k] - J) / std::abs(J);
    rep.margins.push_back({t, trace.F0[k], J, rel});
    if (rep.margins.size() == 1 || rel < rep.worst_relative) rep.worst_relative = rel;
    if (rel < -tol) rep.violation = true;
  }
  return rep;
}

}  // namespace wavelab::pde
