#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "wavelab/config.hpp"
#include "wavelab/params.hpp"

using namespace wavelab;

namespace {
ProblemParams make(double mu1, double beta, double mu2 = 1.0, double alpha = 0.0) {
  ProblemParams::Values v;
  v.mu1 = mu1;
  v.beta = beta;
  v.mu2 = mu2;
  v.alpha = alpha;
  return ProblemParams(v);
}
}  // namespace

TEST_CASE("construction rejects every violated constraint at once") {
  ProblemParams::Values v;
  v.p = 1.0;
  v.alpha = 1.0;
  v.beta = 1.0;
  v.mu1 = -1.0;
  v.mu2 = 0.0;
  v.R = 0.5;
  v.eps = 0.0;
  v.n = 0;
  try {
    ProblemParams bad(v);
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(e.violations().size() == 8);
  }
  CHECK(ProblemParams::violations(ProblemParams::Values{}).empty());
}

TEST_CASE("single violations are reported individually") {
  ProblemParams::Values v;
  v.p = 0.5;
  CHECK(ProblemParams::violations(v).size() == 1);
  CHECK_THROWS_AS(ProblemParams{v}, ParameterError);
  v = {};
  v.R = 0.99;
  CHECK(ProblemParams::violations(v).size() == 1);
}

TEST_CASE("damping coefficient") {
  CHECK(CoefficientSet(make(0.0, 2.0)).damping_coeff(3.3) == 0.0);
  CHECK(CoefficientSet(make(2.0, 2.0)).damping_coeff(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(CoefficientSet(make(2.0, 2.0)).damping_coeff(1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("mass coefficient") {
  CHECK(CoefficientSet(make(0.0, 2.0, 1.0, -1.0)).mass_coeff(7.0) == doctest::Approx(1.0));
  CHECK(CoefficientSet(make(0.0, 2.0, 2.0, 0.0)).mass_coeff(1.0) == doctest::Approx(1.0));
  CHECK(CoefficientSet(make(0.0, 2.0, 1.0, 0.5)).mass_coeff(0.0) == doctest::Approx(1.0));
}

TEST_CASE("multiplier and floor") {
  CHECK(CoefficientSet(make(0.0, 2.0)).multiplier(3.7) == 1.0);
  const CoefficientSet c(make(2.0, 2.0));
  CHECK(c.multiplier(0.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(c.multiplier(1e12) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c.multiplier_floor() == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(CoefficientSet(make(0.0, 2.0)).multiplier_floor() == 1.0);
  CHECK(CoefficientSet(make(1.0, 3.0)).multiplier_floor() ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
}

TEST_CASE("property: multiplier is monotone and bounded by floor and one") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const CoefficientSet c(make(gen.uniform(0.0, 5.0), gen.uniform(1.01, 6.0)));
    const double lo = c.multiplier_floor();
    double prev = c.multiplier(0.0);
    for (int k = 0; k < 200; ++k) {
      const double t = std::expm1(k * 0.07);
      const double m = c.multiplier(t);
      REQUIRE(m >= prev);
      REQUIRE(m >= lo * (1.0 - 1e-15));
      REQUIRE(m <= 1.0);
      prev = m;
    }
  }
}

TEST_CASE("property: kappa-style square roots agree") {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const double mu1 = gen.uniform(0.0, 4.0), beta = gen.uniform(1.1, 5.0),
                 mu2 = gen.uniform(0.1, 5.0);
    const CoefficientSet c(make(mu1, beta, mu2));
    const double a = std::sqrt(mu2 * std::exp(mu1 / (1.0 - beta)));
    const double b = std::sqrt(mu2 * c.multiplier_floor());
    CHECK(a == doctest::Approx(b).epsilon(1e-15));
  }
}

TEST_CASE("with_eps keeps other values and revalidates") {
  const auto p = make(1.0, 2.0).with_eps(0.25);
  CHECK(p.eps() == 0.25);
  CHECK(p.mu1() == 1.0);
  CHECK_THROWS_AS(p.with_eps(-1.0), ParameterError);
}

TEST_CASE("key-value config parsing and overrides") {
  const auto cfg = KeyValueConfig::parse(
      "# standard config\n"
      "n = 2\n"
      "p=3.5\n"
      "  alpha = -0.5   # trailing comment\n"
      "\n"
      "mu1 = 1\n"
      "mu1 = 2\n");
  CHECK(cfg.get_int("n", 0) == 2);
  CHECK(cfg.get_double("p", 0) == 3.5);
  CHECK(cfg.get_double("alpha", 0) == -0.5);
  CHECK(cfg.get_double("mu1", 0) == 2.0);
  CHECK(cfg.get_double("missing", 7.0) == 7.0);
  CHECK_THROWS_AS(cfg.require_double("missing"), DomainError);
  const auto params = params_from_config(cfg);
  CHECK(params.n() == 2);
  CHECK(params.beta() == 2.0);
  KeyValueConfig over = cfg;
  over.set("p", "4");
  CHECK(params_from_config(over).p() == 4.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(KeyValueConfig::parse("p 3\n"), DomainError);
  const auto cfg = KeyValueConfig::parse("p = abc\n");
  CHECK_THROWS_AS(cfg.get_double("p", 1.0), DomainError);
  CHECK_THROWS_AS(params_from_config(KeyValueConfig::parse("p = 0.5\n")), ParameterError);
  CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/file.cfg"), DomainError);
}

TEST_CASE("config load from file") {
  const char* path = "test_params_tmp.cfg";
  {
    std::ofstream os(path);
    os << "eps = 0.3\nR = 2\n";
  }
  const auto params = params_from_config(KeyValueConfig::load(path));
  CHECK(params.eps() == 0.3);
  CHECK(params.R() == 2.0);
  std::remove(path);
}
