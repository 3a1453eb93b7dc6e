#pragma once

// Reference implementations used only by tests. Each one takes a route
// independent of the library code it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// I_ν(x) by direct power series in long double.
inline long double bessel_i_series(long double nu, long double x, int max_terms = 400) {
  const long double half = x / 2.0L;
  long double log_term = nu * std::log(half) - std::lgamma(nu + 1.0L);
  long double sum = 0.0L;
  for (int k = 0; k < max_terms; ++k) {
    const long double term = std::exp(log_term);
    sum += term;
    if (k > x && term < sum * 1e-21L) break;
    log_term += 2.0L * std::log(half) - std::log(k + 1.0L) - std::log(k + 1.0L + nu);
  }
  return sum;
}

// K_ν(x) = ∫₀^∞ exp(-x cosh t) cosh(νt) dt by the trapezoid rule, which is
// spectrally accurate for this even, analytic, doubly-exponentially decaying
// integrand.
inline long double bessel_k_quadrature(long double nu, long double x, long double h = 1.0L / 128) {
  long double sum = 0.5L * std::exp(-x);
  for (int k = 1;; ++k) {
    const long double t = k * h;
    const long double term = std::exp(-x * std::cosh(t) + nu * t) * 0.5L *
                             (1.0L + std::exp(-2.0L * nu * t));
    sum += term;
    if (x * std::cosh(t) - nu * t > 800.0L) break;
  }
  return sum * h;
}

inline double i_half(double x) { return std::sqrt(2.0 / (M_PI * x)) * std::sinh(x); }
inline double k_half(double x) { return std::sqrt(M_PI / (2.0 * x)) * std::exp(-x); }
inline double i_three_halves(double x) {
  return std::sqrt(2.0 / (M_PI * x)) * (std::cosh(x) - std::sinh(x) / x);
}
inline double k_three_halves(double x) {
  return std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * (1.0 + 1.0 / x);
}

// Classical RK4 with a fixed step for y'' = f(t, y, y').
template <class F>
std::vector<double> rk4_second_order(F f, double y0, double v0, double t0, double t1, int steps) {
  std::vector<double> ys{y0};
  const double h = (t1 - t0) / steps;
  double y = y0, v = v0, t = t0;
  for (int i = 0; i < steps; ++i) {
    const double k1y = v, k1v = f(t, y, v);
    const double k2y = v + 0.5 * h * k1v, k2v = f(t + 0.5 * h, y + 0.5 * h * k1y, k2y);
    const double k3y = v + 0.5 * h * k2v, k3v = f(t + 0.5 * h, y + 0.5 * h * k2y, k3y);
    const double k4y = v + h * k3v, k4v = f(t + h, y + h * k3y, k4y);
    y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += h;
    ys.push_back(y);
  }
  return ys;
}

// Seeded value generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
