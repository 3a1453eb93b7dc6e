#include <doctest.h>

#include <cmath>

#include "wavelab/ode.hpp"

using namespace wavelab::ode;

namespace {
MomentumSystem power_system(double m, double coef, double p) {
  return {[m](double) { return m; },
          [coef, p](double, double F) { return coef * std::pow(std::abs(F), p); }, p};
}
}  // namespace

TEST_CASE("cubic blow-up at sqrt(2)") {
  // F = 1/(1 - t/√2) solves F'' = F³.
  const auto r = integrate_to_blowup(power_system(1.0, 1.0, 3.0), 1.0, 1.0 / std::sqrt(2.0), 10.0);
  REQUIRE(r.blow_up);
  CHECK(r.t_lo <= std::sqrt(2.0));
  CHECK(r.t_hi >= std::sqrt(2.0));
  CHECK(r.t_hi - r.t_lo <= 1e-3 * r.t_hi);
  for (const auto& pt : r.trace) {
    if (pt.t > 1.3) break;
    CHECK(pt.F == doctest::Approx(1.0 / (1.0 - pt.t / std::sqrt(2.0))).epsilon(1e-6));
  }
}

TEST_CASE("quadratic blow-up with the closed form 6/(T-t)^2") {
  const double T = 2.0;
  const auto r = integrate_to_blowup(power_system(1.0, 1.0, 2.0), 6.0 / (T * T),
                                     12.0 / (T * T * T), 10.0);
  REQUIRE(r.blow_up);
  CHECK(r.t_lo <= T);
  CHECK(r.t_hi >= T);
  CHECK(r.t_hi - r.t_lo <= 1e-3 * r.t_hi);
}

TEST_CASE("constant multiplier rescales the force") {
  // {2F'}' = F³ with F = 1/(1 - t/2).
  const auto r = integrate_to_blowup(power_system(2.0, 1.0, 3.0), 1.0, 0.5, 10.0);
  REQUIRE(r.blow_up);
  CHECK(r.t_lo <= 2.0);
  CHECK(r.t_hi >= 2.0);
}

TEST_CASE("time rescaling halves the blow-up time") {
  // G(t) = F(2t) solves G'' = 4F''(2t), so quadrupling the force with doubled
  // initial slope halves the time.
  const auto a = integrate_to_blowup(power_system(1.0, 1.0, 3.0), 1.0, 0.3, 20.0);
  const auto b = integrate_to_blowup(power_system(1.0, 4.0, 3.0), 1.0, 0.6, 20.0);
  REQUIRE(a.blow_up);
  REQUIRE(b.blow_up);
  const double ta = 0.5 * (a.t_lo + a.t_hi), tb = 0.5 * (b.t_lo + b.t_hi);
  CHECK(tb == doctest::Approx(ta / 2.0).epsilon(1e-3));
}

TEST_CASE("linear growth without forcing reaches the horizon") {
  MomentumSystem sys{[](double) { return 1.0; }, [](double, double) { return 0.0; }, 2.0};
  const auto r = integrate_to_blowup(sys, 1.0, 0.5, 5.0);
  CHECK_FALSE(r.blow_up);
  CHECK(r.t_end == doctest::Approx(5.0));
  REQUIRE(!r.trace.empty());
  CHECK(r.trace.back().F == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("exponential solution of the linear problem") {
  MomentumSystem sys{[](double) { return 1.0; }, [](double, double F) { return F; }, 1.0};
  const auto r = integrate_to_blowup(sys, 1.0, 1.0, 3.0);
  CHECK_FALSE(r.blow_up);
  for (const auto& pt : r.trace) CHECK(pt.F == doctest::Approx(std::exp(pt.t)).epsilon(1e-7));
}

TEST_CASE("trace can be switched off") {
  BlowupOptions opts;
  opts.record_trace = false;
  const auto r =
      integrate_to_blowup(power_system(1.0, 1.0, 3.0), 1.0, 1.0 / std::sqrt(2.0), 10.0, opts);
  CHECK(r.blow_up);
  CHECK(r.trace.size() <= 2);
}
