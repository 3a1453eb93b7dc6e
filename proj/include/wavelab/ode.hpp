#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace wavelab::ode {

// Scalar second-order problem in momentum form
//   F' = P / m(t),   P' = force(t, F),    P = m F',
// i.e. {m F'}' = force(t, F). force is assumed to grow like |F|^p for large F.
struct MomentumSystem {
  std::function<double(double)> m;
  std::function<double(double, double)> force;
  double p = 2.0;
};

struct BlowupOptions {
  double rtol = 1e-9;
  double atol = 1e-14;
  double threshold = 1e10;   // F must exceed this before blow-up is declared
  double h_initial = 1e-3;
  double collapse_rel = 1e-14;  // step collapse: h < collapse_rel * t
  double remaining_rel = 1e-7;  // stop once the asymptotic time-to-blow-up is this small
  long max_steps = 5'000'000;
  bool record_trace = true;
};

struct TracePoint {
  double t;
  double F;
  double dF;  // F'
};

struct BlowupResult {
  bool blow_up = false;
  double t_lo = 0.0;  // blow-up bracket (valid when blow_up)
  double t_hi = 0.0;
  double t_end = 0.0;  // last integrated time
  long steps = 0;
  std::vector<TracePoint> trace;
};

// Integrates from t = 0 to t_max with RK4 step doubling. A blow-up is declared
// when F exceeds the threshold and either the asymptotic remaining time
// 2F/((p-1)F') drops below remaining_rel·t or the step collapses. The bracket
// is padded by the disagreement of a second run at rtol/100.
BlowupResult integrate_to_blowup(const MomentumSystem& sys, double F0, double dF0, double t_max,
                                 const BlowupOptions& opts = {});

}  // namespace wavelab::ode
