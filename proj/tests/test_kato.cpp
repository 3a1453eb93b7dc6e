#include <doctest.h>

#include <cmath>

#include "kato_instances.hpp"
#include "oracles.hpp"
#include "wavelab/kato.hpp"

using namespace wavelab;
using namespace wavelab::kato;

namespace {
KatoInstance unit_instance() {
  KatoInstance k;
  k.A = [](double) { return 1.0; };
  k.B = [](double) { return 1.0; };
  k.m = [](double) { return 1.0; };
  k.p = 3.0;
  k.delta = 0.5;
  k.F0 = 1.0;
  k.F0p = 1.0;
  return k;
}
}  // namespace

TEST_CASE("h in closed-form cases") {
  auto k = unit_instance();
  CHECK(h_eval(k, 0.0) == doctest::Approx(1.0));
  CHECK(h_eval(k, 7.0) == doctest::Approx(1.0));
  k.A = [](double t) { return std::exp(t); };
  for (double t : {0.0, 1.0, 3.3}) CHECK(h_eval(k, t) == doctest::Approx(std::exp(t / 2.0)));
  k.B = [](double t) { return 1.0 / (1.0 + t); };
  k.delta = 1.0 - 1e-12;
  CHECK(h_eval(k, 3.0) == doctest::Approx(0.5).epsilon(1e-9));
  k.T0_tilde = 2.0;
  CHECK_THROWS_AS(h_eval(k, 1.0), DomainError);
}

TEST_CASE("T1 tilde") {
  auto k = unit_instance();
  k.F0 = 2.0;
  CHECK(compute_T1_tilde(k) == doctest::Approx(2.0));
  k.m_lo = 0.5;
  CHECK(compute_T1_tilde(k) == doctest::Approx(4.0));
  k.F0p = 0.0;
  k.t_double = 1.0;
  CHECK(compute_T1_tilde(k) == 1.0);
  k.t_double.reset();
  CHECK_THROWS_AS(compute_T1_tilde(k), HypothesisError);
}

TEST_CASE("blow-up condition for A = t") {
  // T h A^δ = T·√T·√T = T² against δ⁻¹·m̄·√((p+1)/m̲) = 4, so T̃ = 2.
  auto k = unit_instance();
  k.A = [](double t) { return t; };
  k.T0_tilde = 1.0;
  CHECK(std::exp(log_condition_rhs(k)) == doctest::Approx(4.0));
  CHECK(std::exp(log_condition_lhs(k, 3.0)) == doctest::Approx(9.0));

  const auto ok = certify(k, 2.5);
  CHECK(ok.candidate_ok);
  CHECK(ok.condition_ok);
  CHECK(ok.T_tilde == 2.5);
  CHECK(ok.bound == 3.0 * ok.T_tilde);
  CHECK(ok.log_lhs >= ok.log_rhs);
  CHECK_FALSE(ok.h_values.empty());

  const auto low = certify(k, 1.5);
  CHECK_FALSE(low.candidate_ok);
  CHECK(low.condition_ok);
  CHECK(low.T_tilde == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(low.T_tilde >= 2.0);
  CHECK(low.bound == 3.0 * low.T_tilde);
}

TEST_CASE("hypothesis violations are named") {
  auto k = unit_instance();
  k.delta = 1.0;
  try {
    certify(k, 5.0);
    FAIL("expected HypothesisError");
  } catch (const HypothesisError& e) {
    CHECK(e.hypothesis() == "delta-range");
  }
  k = unit_instance();
  k.B = [](double t) { return 1.0 + t; };
  try {
    certify(k, 5.0);
    FAIL("expected HypothesisError");
  } catch (const HypothesisError& e) {
    CHECK(e.hypothesis() == "B-decreasing");
  }
  k = unit_instance();
  k.A = [](double t) { return 1.0 / (1.0 + t); };
  try {
    certify(k, 5.0);
    FAIL("expected HypothesisError");
  } catch (const HypothesisError& e) {
    CHECK(e.hypothesis() == "h-monotone");
  }
  k = unit_instance();
  k.m = [](double t) { return 1.0 + t; };
  k.m_hi = 2.0;
  try {
    certify(k, 5.0);
    FAIL("expected HypothesisError");
  } catch (const HypothesisError& e) {
    CHECK(e.hypothesis() == "m-bounds");
  }
  k = unit_instance();
  k.F0 = 0.0;
  k.F0p = 0.0;
  CHECK_THROWS_AS(certify(k, 5.0), HypothesisError);
  k = unit_instance();
  k.T0_tilde = 3.0;
  CHECK_THROWS_AS(certify(k, 2.0), DomainError);
}

TEST_CASE("oracle recovers the cubic closed form") {
  const auto one = [](double) { return 1.0; };
  const auto r = ode_blowup_oracle(one, one, 3.0, 1.0, 1.0 / std::sqrt(2.0), 10.0);
  REQUIRE(r.blow_up);
  CHECK(r.t_lo <= std::sqrt(2.0));
  CHECK(r.t_hi >= std::sqrt(2.0));
  CHECK(r.t_hi - r.t_lo <= 1e-3 * r.t_hi);
  CHECK_THROWS_AS(ode_blowup_oracle(one, one, 3.0, 0.0, 0.0, 10.0), DomainError);
}

TEST_CASE("oracle time rescaling") {
  const auto one = [](double) { return 1.0; };
  const auto four = [](double) { return 4.0; };
  const auto a = ode_blowup_oracle(one, one, 2.5, 0.7, 0.2, 50.0);
  const auto b = ode_blowup_oracle(one, four, 2.5, 0.7, 0.4, 50.0);
  REQUIRE(a.blow_up);
  REQUIRE(b.blow_up);
  CHECK(0.5 * (b.t_lo + b.t_hi) == doctest::Approx(0.25 * (a.t_lo + a.t_hi)).epsilon(1e-3));
}

TEST_CASE("property: oracle trajectories stay positive") {
  oracle::Gen gen(51);
  int used = 0;
  for (int trial = 0; trial < 60 && used < 30; ++trial) {
    auto s = kato_gen::draw(gen);
    if (!s) continue;
    ++used;
    for (const auto& pt : s->oracle.trace) {
      if (pt.t == 0.0) continue;
      REQUIRE(pt.F > 0.0);
      REQUIRE(pt.dF > 0.0);
    }
  }
  CHECK(used >= 20);
}

TEST_CASE("property: H is convex where h is non-decreasing") {
  oracle::Gen gen(52);
  int used = 0;
  for (int trial = 0; trial < 40 && used < 15; ++trial) {
    auto s = kato_gen::draw(gen);
    if (!s) continue;
    ++used;
    const auto& inst = s->inst;
    const double dt = 0.01;
    double H_prev2 = 0.0, H_prev = 0.0, H = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double t = i * dt;
      H += 0.5 * dt * (h_eval(inst, t - dt) + h_eval(inst, t));
      if (i >= 2) REQUIRE(H - 2.0 * H_prev + H_prev2 >= -1e-10);
      H_prev2 = H_prev;
      H_prev = H;
    }
  }
  CHECK(used >= 10);
}

TEST_CASE("property: certificates are sound on randomized instances") {
  oracle::Gen gen(53);
  int certified = 0;
  for (int trial = 0; trial < 80 && certified < 20; ++trial) {
    auto s = kato_gen::draw(gen);
    if (!s) continue;
    const auto& inst = s->inst;
    const double candidate = std::max(inst.T0_tilde, compute_T1_tilde(inst));
    KatoReport rep;
    try {
      rep = certify(inst, candidate);
    } catch (const HypothesisError&) {
      continue;
    }
    if (!rep.condition_ok) continue;
    ++certified;
    CHECK(s->oracle.t_hi <= 1.01 * rep.bound);
  }
  CHECK(certified >= 20);
}

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(0.0, 10.0, 100);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 10.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  const auto h = geometric_grid(1.0, 1000.0, 1000);
  CHECK(h.size() == 3001);
}

TEST_CASE("onset of monotone h") {
  auto k = unit_instance();
  // log h = (t-1)²/2 decreases until t = 1.
  k.A = [](double t) { return std::exp((t - 1.0) * (t - 1.0)); };
  const double onset = find_h_monotone_onset(k, 0.0, 10.0);
  CHECK(onset == doctest::Approx(1.0).epsilon(0.01));
}
