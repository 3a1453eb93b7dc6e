#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/specfun.hpp"

using namespace wavelab;
using namespace wavelab::specfun;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("gamma values and poles") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
  CHECK_THROWS_AS(gamma_fn(-3.0), PoleError);
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(M_PI)).epsilon(1e-14));
}

TEST_CASE("gamma at 1/2 against quadrature of the integral definition") {
  // Γ(1/2) = 2∫₀^∞ e^{-s²} ds, trapezoid on [0, 10].
  const int n = 20000;
  const double h = 10.0 / n;
  double s = 0.5;
  for (int k = 1; k <= n; ++k) s += std::exp(-(k * h) * (k * h));
  CHECK(gamma_fn(0.5) == doctest::Approx(2.0 * h * s).epsilon(1e-12));
}

TEST_CASE("property: gamma recurrence") {
  oracle::Gen gen(21);
  for (int i = 0; i < 500; ++i) {
    const double x = gen.uniform(-20.0, 60.0);
    if (std::abs(x - std::round(x)) < 1e-6 && x <= 0.5) continue;
    CHECK(rel(gamma_fn(x + 1.0), x * gamma_fn(x)) < 1e-12);
  }
}

TEST_CASE("half-order closed forms") {
  CHECK(bessel_i(0.5, 1.0) == doctest::Approx(0.937674888245).epsilon(1e-11));
  CHECK(bessel_k(0.5, 1.0) == doctest::Approx(0.461068504447).epsilon(1e-11));
  CHECK(rel(bessel_k(0.5, 10.0), std::sqrt(M_PI / 20.0) * std::exp(-10.0)) < 1e-10);
  for (double x : {0.01, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 5.0, 10.0, 30.0, 49.0, 51.0, 100.0, 400.0,
                   700.0}) {
    CAPTURE(x);
    CHECK(rel(bessel_i(0.5, x), oracle::i_half(x)) < 1e-10);
    CHECK(rel(bessel_k(0.5, x), oracle::k_half(x)) < 1e-10);
    CHECK(rel(bessel_i(1.5, x), oracle::i_three_halves(x)) < 1e-10);
    CHECK(rel(bessel_k(1.5, x), oracle::k_three_halves(x)) < 1e-10);
  }
}

TEST_CASE("I against the power-series oracle") {
  CHECK(rel(bessel_i(1.5, 2.0), static_cast<double>(oracle::bessel_i_series(1.5L, 2.0L))) < 1e-12);
  CHECK(bessel_i(1.0, 1e-300) < 1e-290);
  CHECK(bessel_i(1.0, 1e-8) == doctest::Approx(0.5e-8).epsilon(1e-10));
  for (double nu : {0.1, 0.5, 1.0, 1.3, 2.0, 2.5, 3.0, 5.0, 12.7, 40.0}) {
    for (double x : {1e-4, 0.05, 0.3, 1.0, 1.99, 2.0, 3.5, 8.0, 17.0, 33.0, 60.0, 150.0, 400.0,
                     699.0}) {
      CAPTURE(nu);
      CAPTURE(x);
      const double ref = static_cast<double>(oracle::bessel_i_series(nu, x, 5000));
      CHECK(rel(bessel_i(nu, x), ref) < 1e-10);
    }
  }
}

TEST_CASE("K against the integral-representation oracle") {
  CHECK(rel(bessel_k(2.0, 1.0), static_cast<double>(oracle::bessel_k_quadrature(2.0L, 1.0L))) <
        1e-10);
  CHECK(bessel_k(2.0, 1.0) == doctest::Approx(1.62483889863).epsilon(1e-10));
  for (double nu : {0.05, 0.5, 0.9999, 1.0, 1.00001, 1.5, 2.0, 2.7, 3.0, 4.0, 7.5}) {
    for (double x : {0.01, 0.1, 0.7, 1.5, 2.0, 2.5, 6.0, 15.0, 40.0, 90.0, 300.0, 690.0}) {
      CAPTURE(nu);
      CAPTURE(x);
      const double ref = static_cast<double>(oracle::bessel_k_quadrature(nu, x));
      CHECK(rel(bessel_k(nu, x), ref) < 1e-10);
    }
  }
}

TEST_CASE("range and domain errors") {
  CHECK_THROWS_AS(bessel_i(1.0, 800.0), RangeError);
  CHECK_THROWS_AS(bessel_k(100.0, 1e-3), RangeError);
  CHECK_THROWS_AS(bessel_i(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
  // Log-scaled variants stay finite where the values overflow.
  const double li = log_bessel_i(1.0, 800.0);
  CHECK(std::isfinite(li));
  // Two-term Hankel expansion with μ = 4ν² = 4.
  const double x = 800.0, mu = 4.0;
  const double series = 1.0 - (mu - 1.0) / (8.0 * x) + (mu - 1.0) * (mu - 9.0) / (128.0 * x * x);
  CHECK(li == doctest::Approx(x - 0.5 * std::log(2 * M_PI * x) + std::log(series)).epsilon(1e-12));
  CHECK(std::isfinite(log_bessel_k(100.0, 1e-3)));
}

TEST_CASE("log variants agree with direct values") {
  for (double nu : {0.3, 1.0, 2.5}) {
    for (double x : {0.2, 3.0, 25.0, 200.0}) {
      CHECK(log_bessel_i(nu, x) == doctest::Approx(std::log(bessel_i(nu, x))).epsilon(1e-12));
      CHECK(std::abs(log_bessel_k(nu, x) - std::log(bessel_k(nu, x))) < 1e-10);
    }
  }
  // Far past the overflow limit the log series must match the long double oracle.
  const double ref = static_cast<double>(std::log(oracle::bessel_i_series(2.0L, 3000.0L, 20000)));
  CHECK(log_bessel_i(2.0, 3000.0) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("bessel_eval bundles both kinds") {
  const auto e = bessel_eval(0.5, 1.0);
  CHECK(e.order == 0.5);
  CHECK(e.argument == 1.0);
  CHECK(e.value_i > 0.0);
  CHECK(e.value_k > 0.0);
  CHECK(rel(e.value_i, oracle::i_half(1.0)) < 1e-12);
}

TEST_CASE("leading asymptotic forms") {
  const double a = bessel_asym_leading(BesselKind::first, 0.5, 50.0);
  CHECK(a == doctest::Approx(std::exp(50.0) / std::sqrt(100.0 * M_PI)).epsilon(1e-14));
  CHECK(std::abs(a / bessel_i(0.5, 50.0) - 1.0) < 0.01);
  const double b = bessel_asym_leading(BesselKind::second, 0.5, 50.0);
  CHECK(rel(b, oracle::k_half(50.0)) < 1e-13);
  const double r = bessel_asym_leading(BesselKind::first, 1.0, 100.0) /
                   static_cast<double>(oracle::bessel_i_series(1.0L, 100.0L, 5000));
  CHECK(r >= 0.99);
  CHECK(r <= 1.01);
  CHECK_THROWS_AS(bessel_asym_leading(BesselKind::first, 2.0, 39.0), RegimeError);
  CHECK_THROWS_AS(bessel_asym_leading(BesselKind::second, 0.5, 9.0), RegimeError);
  CHECK(asym_regime_threshold(3.0) == 90.0);
}

TEST_CASE("property: Wronskian and recurrences over the order-argument grid") {
  int count = 0;
  for (int a = 1; a <= 20; ++a) {
    const double nu = 3.0 * a / 20.0;
    for (int b = 0; b < 20; ++b) {
      const double x = 0.1 * std::pow(500.0, b / 19.0);
      CAPTURE(nu);
      CAPTURE(x);
      const double I = bessel_i(nu, x), K = bessel_k(nu, x);
      const double Im = bessel_i_any_order(nu - 1.0, x), Ip = bessel_i(nu + 1.0, x);
      const double Km = bessel_k_any_order(nu - 1.0, x), Kp = bessel_k(nu + 1.0, x);
      const double dI = 0.5 * (Im + Ip), dK = -0.5 * (Km + Kp);
      CHECK(std::abs((dI * K - I * dK) * x - 1.0) < 1e-8);
      CHECK(rel(Im - Ip, 2.0 * nu / x * I) < 1e-8);
      CHECK(rel(Kp - Km, 2.0 * nu / x * K) < 1e-8);
      ++count;
    }
  }
  CHECK(count == 400);
}

TEST_CASE("property: monotonicity in the argument") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const double nu = gen.uniform(0.01, 6.0);
    double pi = 0.0, pk = INFINITY;
    for (int k = 0; k < 60; ++k) {
      const double x = 0.05 * std::pow(1.12, k);
      const double I = bessel_i(nu, x), K = bessel_k(nu, x);
      REQUIRE(I > pi);
      REQUIRE(K < pk);
      REQUIRE(I > 0.0);
      REQUIRE(K > 0.0);
      pi = I;
      pk = K;
    }
  }
}

TEST_CASE("property: logarithmic derivatives match finite differences") {
  oracle::Gen gen(32);
  for (int trial = 0; trial < 200; ++trial) {
    const double nu = gen.uniform(0.0, 5.0), x = gen.log_uniform(0.05, 500.0);
    const auto r = log_bessel_ik(nu, x);
    const double h = 1e-5 * x;
    const auto up = log_bessel_ik(nu, x + h), down = log_bessel_ik(nu, x - h);
    const double di = (up.log_i - down.log_i) / (2 * h);
    const double dk = (up.log_k - down.log_k) / (2 * h);
    CHECK(r.di == doctest::Approx(di).epsilon(1e-6));
    CHECK(r.dk == doctest::Approx(dk).epsilon(1e-6));
  }
}
