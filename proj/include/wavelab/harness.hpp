#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wavelab/config.hpp"
#include "wavelab/params.hpp"
#include "wavelab/pde.hpp"

namespace wavelab::harness {

// Keys: profile = bump|table; bump.power, bump.f_amp, bump.g_amp; profile.table
// (CSV path with columns r,f,g). The bump radius is R.
pde::Profile profile_from_config(const KeyValueConfig& cfg);
// Reads r,f,g rows; a non-numeric first line is treated as a header.
pde::Profile load_profile_table(const std::string& path);

// Keys: t_max, U_max, dt_min, growth_limit, record_interval, support_floor.
pde::RunOptions run_options_from_config(const KeyValueConfig& cfg);

// Geometric sequence from start down to stop; needs 1 > start > stop > 0, count ≥ 3.
std::vector<double> geometric_eps_grid(double start, double stop, int count);

struct SweepPlan {
  ProblemParams::Values params;  // eps is overwritten per row
  std::vector<double> eps_grid;
  double t_max = 60.0;
  double dr = 0.01;
  double cfl = 0.5;
  pde::Profile profile = pde::Profile::bump(1.0);
  int workers = 0;  // 0 picks hardware concurrency
  double slack = 0.10;

  // Throws DomainError unless the grid is strictly decreasing in (0,1) with ≥ 3 points.
  void validate() const;
};

struct SweepRow {
  double eps = 0.0;
  double t_blow_lo = 0.0;  // NaN without blow-up
  double t_blow_hi = 0.0;
  double zeta = 0.0;  // NaN outside the theorem regime
  double bound_3zeta = 0.0;
  double asymptote = 0.0;
  std::string status;  // ok | no-blowup | outside-theorem-regime | inconsistent | error: ...
};

struct SweepTable {
  std::vector<SweepRow> rows;
  double C = 0.0;
  double asymptote_c = 0.0;
  double exponent = 0.0;  // 2/(1-α)
};

// Row status from the regime guard (Cε ≥ 1), the blow-up outcome and the bound.
// bound_3zeta is ignored outside the regime.
std::string classify_row(double C, double eps, bool blew_up, double t_blow_hi,
                         double bound_3zeta, double slack);

// Runs every row on a bounded worker pool; rows keep the grid order.
SweepTable run_sweep(const SweepPlan& plan);

// True when every in-regime blow-up row satisfies t_blow_hi ≤ 3ζ(1+slack).
bool theorem_consistent(const SweepTable& table, double slack = 0.10);

void write_sweep_csv(std::ostream& os, const SweepTable& table);
// Reads rows written by write_sweep_csv. Throws DomainError on malformed input.
std::vector<SweepRow> read_sweep_csv(std::istream& is);

struct FitResult {
  double c_fit = 0.0;
  double exponent_fixed = 0.0;
  double residual_rms = 0.0;
  int points_used = 0;
};

// Least squares for c in T ≈ c [log(1/ε)]^{2/(1-α)} using bracket midpoints.
// Throws InsufficientDataError with fewer than three usable rows.
FitResult fit_lifespan_curve(const std::vector<SweepRow>& rows, double alpha);

struct FreeFit {
  double c = 0.0;
  double exponent = 0.0;
  int points_used = 0;
};

// Diagnostic: log T ≈ log c + k log log(1/ε), both free.
FreeFit fit_free_exponent(const std::vector<SweepRow>& rows);

}  // namespace wavelab::harness
