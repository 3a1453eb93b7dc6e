#include "wavelab/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kLogMax = 709.0;  // log of the largest safely exponentiable value
constexpr int kMaxIter = 100000;

// Taylor coefficients of 1/Γ(1+z) about z = 0.
constexpr std::array<double, 29> kRecipGamma1p = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
};

// Temme's auxiliary functions for |mu| <= 1/2:
//   gam1 = (1/Γ(1-μ) - 1/Γ(1+μ)) / (2μ),  gam2 = (1/Γ(1-μ) + 1/Γ(1+μ)) / 2.
void temme_gammas(double mu, double& gam1, double& gam2) {
  double odd = 0.0;
  double even = 0.0;
  double pw = 1.0;  // mu^k
  for (std::size_t k = 0; k < kRecipGamma1p.size(); ++k) {
    if (k % 2 == 0) {
      even += kRecipGamma1p[k] * pw;
    } else {
      odd += kRecipGamma1p[k] * pw / mu;  // mu^{k-1}
    }
    pw *= mu;
  }
  if (mu == 0.0) odd = kRecipGamma1p[1];
  gam1 = -odd;
  gam2 = even;
}

// Hankel expansion sums for large x:
//   I_ν(x) ~ e^x/√(2πx) Σ (-1)^k a_k(ν)/x^k,  K_ν(x) ~ √(π/(2x)) e^{-x} Σ a_k(ν)/x^k.
struct HankelSums {
  double s_i;
  double s_k;
};

HankelSums hankel_sums(double nu, double x) {
  const double mu4 = 4.0 * nu * nu;
  double term = 1.0;
  double s_i = 1.0;
  double s_k = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 2000; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu4 - odd * odd) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag >= prev) break;  // past the smallest term of the asymptotic series
    s_k += term;
    s_i += (k % 2 == 0) ? term : -term;
    if (mag < kEps * 1e-3) break;
    prev = mag;
  }
  return {s_i, s_k};
}

bool use_hankel(double nu, double x) { return x > std::max(50.0, 2.0 * nu * nu); }

LogBesselIK hankel_ik(double nu, double x) {
  const auto h0 = hankel_sums(nu, x);
  const auto h1 = hankel_sums(nu + 1.0, x);
  LogBesselIK r{};
  r.log_i = x - 0.5 * std::log(2.0 * kPi * x) + std::log(h0.s_i);
  r.log_k = -x + 0.5 * std::log(kPi / (2.0 * x)) + std::log(h0.s_k);
  r.di = h1.s_i / h0.s_i + nu / x;
  r.dk = nu / x - h1.s_k / h0.s_k;
  return r;
}

// Temme series (x < 2) or Steed's continued fraction (x >= 2) for K_μ and
// K_{μ+1}, |μ| <= 1/2, combined with the continued fraction for I_ν'/I_ν and
// the Wronskian I K' - I' K = -1/x.
LogBesselIK temme_ik(double nu, double x) {
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;

  // I_ν'/I_ν by modified Lentz.
  double h = nu * xi;
  if (h < kTiny) h = kTiny;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int i = 0;
  for (; i < kMaxIter; ++i) {
    b += xi2;
    d = 1.0 / (b + d);
    c = b + 1.0 / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  if (i >= kMaxIter) throw Error("bessel: continued fraction for I'/I did not converge");
  const double di_nu = h;

  // Downward recurrence from ν to μ, renormalising to stay in range.
  double ril = 1.0;
  double ripl = h;
  double log_ratio = 0.0;  // log of the accumulated renormalisation
  double fact = nu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    const double ritemp = fact * ril + ripl;
    fact -= xi;
    ripl = fact * ritemp + ril;
    ril = ritemp;
    if (std::abs(ril) > 1e200) {
      ril *= 1e-200;
      ripl *= 1e-200;
      log_ratio += 200.0 * std::log(10.0);
    }
  }
  const double f_mu = ripl / ril;                          // I_μ'/I_μ
  const double log_inu_over_imu = -std::log(ril) - log_ratio;  // log(I_ν/I_μ)

  double log_kmu = 0.0;
  double ratio_k = 0.0;  // K_{μ+1}/K_μ
  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fct = (std::abs(pimu) < kEps) ? 1.0 : pimu / std::sin(pimu);
    double dd = -std::log(x2);
    double e = mu * dd;
    const double fct2 = (std::abs(e) < kEps) ? 1.0 : std::sinh(e) / e;
    double gam1 = 0.0;
    double gam2 = 0.0;
    temme_gammas(mu, gam1, gam2);
    const double gampl = gam2 - mu * gam1;  // 1/Γ(1+μ)
    const double gammi = gam2 + mu * gam1;  // 1/Γ(1-μ)
    double ff = fct * (gam1 * std::cosh(e) + gam2 * fct2 * dd);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double cc = 1.0;
    dd = x2 * x2;
    double sum1 = p;
    int k = 1;
    for (; k <= kMaxIter; ++k) {
      ff = (k * ff + p + q) / (k * k - mu2);
      cc *= dd / k;
      p /= (k - mu);
      q /= (k + mu);
      const double del = cc * ff;
      sum += del;
      sum1 += cc * (p - k * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (k > kMaxIter) throw Error("bessel: Temme series did not converge");
    if (!std::isfinite(sum) || !std::isfinite(sum1)) {
      throw RangeError("bessel: K overflows at x = " + std::to_string(x));
    }
    log_kmu = std::log(sum);
    ratio_k = sum1 * xi2 / sum;
  } else {
    double bb = 2.0 * (1.0 + x);
    double dd = 1.0 / bb;
    double hh = dd;
    double delh = dd;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    double cc = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int k = 1;
    for (; k < kMaxIter; ++k) {
      a -= 2 * k;
      cc = -a * cc / (k + 1.0);
      const double qnew = (q1 - bb * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += cc * qnew;
      bb += 2.0;
      dd = 1.0 / (bb + a * dd);
      delh = (bb * dd - 1.0) * delh;
      hh += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) <= kEps) break;
    }
    if (k >= kMaxIter) throw Error("bessel: Steed continued fraction did not converge");
    hh *= a1;
    log_kmu = 0.5 * std::log(kPi / (2.0 * x)) - x - std::log(s);
    ratio_k = (mu + x + 0.5 - hh) * xi;
  }

  // Wronskian gives I_μ.
  const double dk_mu = mu * xi - ratio_k;
  const double log_imu = -std::log(x) - log_kmu - std::log(f_mu - dk_mu);

  // Upward recurrence for K from μ to ν, carried as ratios.
  double log_k = log_kmu;
  double r = ratio_k;  // K_{m+1}/K_m at the current order m
  for (int l = 1; l <= nl; ++l) {
    const double next = (mu + l) * xi2 * r + 1.0;  // K_{m+2}/K_m
    log_k += std::log(r);
    r = next / r;
  }

  LogBesselIK out{};
  out.log_i = log_imu + log_inu_over_imu;
  out.di = di_nu;
  out.log_k = log_k;
  out.dk = nu * xi - r;
  return out;
}

void require_positive(double nu, double x) {
  if (!(nu > 0.0)) throw DomainError("bessel: order must be > 0, got " + std::to_string(nu));
  if (!(x > 0.0)) throw DomainError("bessel: argument must be > 0, got " + std::to_string(x));
}

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
  }
  return std::tgamma(x);
}

LogBesselIK log_bessel_ik(double nu, double x) {
  if (!(nu >= 0.0)) throw DomainError("bessel: order must be >= 0");
  if (!(x > 0.0)) throw DomainError("bessel: argument must be > 0");
  return use_hankel(nu, x) ? hankel_ik(nu, x) : temme_ik(nu, x);
}

double log_bessel_i(double nu, double x) {
  require_positive(nu, x);
  return log_bessel_ik(nu, x).log_i;
}

double log_bessel_k(double nu, double x) {
  require_positive(nu, x);
  return log_bessel_ik(nu, x).log_k;
}

double bessel_i(double nu, double x) {
  const double l = log_bessel_i(nu, x);
  if (l > kLogMax) {
    throw RangeError("bessel_i: I_nu(x) overflows for x = " + std::to_string(x) +
                     "; use log_bessel_i");
  }
  return std::exp(l);
}

double bessel_k(double nu, double x) {
  const double l = log_bessel_k(nu, x);
  if (l > kLogMax) {
    throw RangeError("bessel_k: K_nu(x) overflows for x = " + std::to_string(x) +
                     "; use log_bessel_k");
  }
  return std::exp(l);
}

double bessel_k_any_order(double nu, double x) {
  const double a = std::abs(nu);
  if (!(x > 0.0)) throw DomainError("bessel: argument must be > 0");
  const double l = log_bessel_ik(a, x).log_k;
  if (l > kLogMax) throw RangeError("bessel_k: overflow");
  return std::exp(l);
}

double bessel_i_any_order(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel: argument must be > 0");
  const double a = std::abs(nu);
  const auto ik = log_bessel_ik(a, x);
  if (ik.log_i > kLogMax || ik.log_k > kLogMax) throw RangeError("bessel_i: overflow");
  const double ia = std::exp(ik.log_i);
  if (nu >= 0.0 || a == std::floor(a)) return ia;
  return ia + (2.0 / kPi) * std::sin(a * kPi) * std::exp(ik.log_k);
}

BesselEval bessel_eval(double nu, double x) {
  return {nu, x, bessel_i(nu, x), bessel_k(nu, x)};
}

double asym_regime_threshold(double nu) { return 10.0 * std::max(1.0, nu * nu); }

double bessel_asym_leading(BesselKind kind, double nu, double x) {
  if (!(x >= asym_regime_threshold(nu))) {
    throw RegimeError("bessel_asym_leading: x = " + std::to_string(x) +
                      " below the asymptotic guard " + std::to_string(asym_regime_threshold(nu)));
  }
  if (kind == BesselKind::first) return std::exp(x) / std::sqrt(2.0 * kPi * x);
  return std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
}

}  // namespace wavelab::specfun
