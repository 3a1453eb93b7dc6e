#pragma once

#include <optional>
#include <vector>

#include "wavelab/comparison.hpp"
#include "wavelab/params.hpp"

namespace wavelab::pde {

// ε-free radial initial data (f, g), supported in [0, support()].
class Profile {
 public:
  // f(r) = f_amp·max(0, 1-(r/R)²)^power, g(r) = g_amp·max(0, 1-(r/R)²)^power.
  static Profile bump(double R, int power = 1, double f_amp = 1.0, double g_amp = 0.0);
  // Piecewise-linear interpolation of tabulated samples; zero past the last node.
  static Profile table(std::vector<double> r, std::vector<double> f, std::vector<double> g);

  double f(double r) const;
  double g(double r) const;
  double support() const noexcept { return support_; }

  // Throws DomainError for negative values, data vanishing identically, or
  // support beyond R.
  void validate(double R) const;

  // ‖f‖_{L¹(Rⁿ)}, ‖g‖_{L¹(Rⁿ)} by fine quadrature.
  comparison::DataNorms norms(int n) const;

 private:
  enum class Kind { bump, table };
  Kind kind_ = Kind::bump;
  double R_ = 1.0;
  int power_ = 1;
  double f_amp_ = 1.0;
  double g_amp_ = 0.0;
  std::vector<double> r_, f_, g_;
  double support_ = 1.0;
};

// Nodes r_i = i·dr, i = 0..points-1, homogeneous Dirichlet at the last node.
struct RadialGrid {
  double r_max = 0.0;
  double dr = 0.0;
  int points = 0;
  int n = 1;

  // r_max ≥ t_end + R + 2dr so the light cone never reaches the boundary.
  static RadialGrid for_horizon(int n, double dr, double t_end, double R);
  double r(int i) const noexcept { return i * dr; }
};

struct FieldState {
  std::vector<double> u;       // level n
  std::vector<double> u_prev;  // level n-1
  double t = 0.0;
  double dt = 0.0;       // next step
  double dt_prev = 0.0;  // last step
  int front = -1;  // last index that may be nonzero; -1 means the whole grid
};

struct SolverOptions {
  double cfl = 0.5;  // dt = cfl·dr; must not exceed 0.5
  bool nonlinear = true;
};

struct BlowupBracket {
  double t_lo;
  double t_hi;
};

struct SimulationTrace {
  std::vector<double> times;
  std::vector<double> F0;
  std::vector<double> energy;
  std::vector<double> support_radius;
  std::vector<double> u_max;
  std::optional<BlowupBracket> blow_up;
  ProblemParams::Values params;
  long steps = 0;
  double dr = 0.0;
  double dt_final = 0.0;
};

struct RunOptions {
  double t_max = 10.0;
  double U_max = 1e8;
  double dt_min = 1e-12;
  double growth_limit = 0.1;  // dt is halved while rate·dt exceeds this
  double record_interval = 0.0;  // 0 records every step
  double support_floor = 1e-12;
};

// Explicit leapfrog scheme for
//   u_tt = Δu - b(t) u_t + μ₂(1+t)^{-(α+1)} u + |u|^p
// with the radial Laplacian in conservative shell form; at r = 0 it reduces to
// n·u_rr(0).
class RadialWaveSolver {
 public:
  RadialWaveSolver(const ProblemParams& params, const RadialGrid& grid, SolverOptions opts = {});

  const RadialGrid& grid() const noexcept { return grid_; }
  const ProblemParams& params() const noexcept { return params_; }

  // u = εf on the grid, first step from the Taylor expansion u(dt) ≈ u + dt u_t + dt²/2 u_tt.
  FieldState init_data(const Profile& profile) const;
  FieldState step(const FieldState& state) const;
  void step_in_place(FieldState& state, std::vector<double>& scratch) const;

  // ∫ u dx = ω_{n-1} Σ V_i u_i with shell volumes V_i.
  double functional_F0(const FieldState& state) const;
  double functional_F0(const std::vector<double>& u) const;
  double energy(const FieldState& state) const;
  double support_radius(const FieldState& state, double floor = 1e-12) const;
  double laplacian(const std::vector<double>& u, int i) const;

  SimulationTrace run_until_blowup(const Profile& profile, const RunOptions& run) const;

 private:
  double source(double u, double t) const;

  ProblemParams params_;
  RadialGrid grid_;
  SolverOptions opts_;
  CoefficientSet coefs_;
  std::vector<double> volume_;  // shell volumes (without ω_{n-1})
  std::vector<double> face_;    // r_{i+1/2}^{n-1}
  double sphere_area_;
};

struct ComparisonMargin {
  double t;
  double F0;
  double J;
  double relative;  // (F0 - J)/|J|
};

struct ComparisonReport {
  std::vector<ComparisonMargin> margins;
  double worst_relative = 0.0;
  bool violation = false;
};

// F0(t) - J(t) on recorded times in [t0, blow-up); flags margins below -tol·|J|.
ComparisonReport verify_comparison(const SimulationTrace& trace,
                                   const comparison::ComparisonSetup& setup, double tol = 1e-3);

}  // namespace wavelab::pde
