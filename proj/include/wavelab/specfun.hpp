#pragma once

namespace wavelab::specfun {

// Γ(x). Throws PoleError at x ∈ {0, -1, -2, ...}.
double gamma_fn(double x);

// Modified Bessel functions of real order ν > 0 and argument x > 0.
// bessel_i throws RangeError when I_ν(x) overflows; use log_bessel_i there.
// bessel_k throws RangeError when K_ν(x) overflows (x → 0⁺ with large ν).
double bessel_i(double nu, double x);
double bessel_k(double nu, double x);

// log I_ν(x), log K_ν(x); finite for every ν ≥ 0, x > 0.
double log_bessel_i(double nu, double x);
double log_bessel_k(double nu, double x);

// I_ν for any real ν (negative orders through I_{-ν} = I_ν + (2/π) sin(νπ) K_ν)
// and K_ν for any real ν (K_{-ν} = K_ν). Used for recurrences that step below
// order zero.
double bessel_i_any_order(double nu, double x);
double bessel_k_any_order(double nu, double x);

// Log-magnitudes and logarithmic derivatives of I_ν and K_ν at one point.
struct LogBesselIK {
  double log_i;  // log I_ν(x)
  double di;     // I_ν'(x) / I_ν(x)
  double log_k;  // log K_ν(x)
  double dk;     // K_ν'(x) / K_ν(x)
};

// ν ≥ 0, x > 0.
LogBesselIK log_bessel_ik(double nu, double x);

struct BesselEval {
  double order;
  double argument;
  double value_i;
  double value_k;
};

BesselEval bessel_eval(double nu, double x);

enum class BesselKind { first, second };

// One-term large-argument forms I_ν(x) ~ e^x/√(2πx), K_ν(x) ~ √(π/(2x)) e^{-x}.
// Requires x ≥ 10·max(1, ν²); throws RegimeError otherwise.
double bessel_asym_leading(BesselKind kind, double nu, double x);
double asym_regime_threshold(double nu);

}  // namespace wavelab::specfun
