#include "ultrahardy/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ultrahardy {

namespace {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficient set).
// Evaluated in long double so that differences of nearby log-Gamma values
// keep enough correlated digits for accurate ratios.
constexpr long double kLanczosG = 607.0L / 128.0L;
constexpr long double kLanczos[15] = {
    0.99999999999999709182L,
    57.156235665862923517L,
    -59.597960355475491248L,
    14.136097974741747174L,
    -0.49191381609762019978L,
    0.33994649984811888699e-4L,
    0.46523628927048575665e-4L,
    -0.98374475304879564677e-4L,
    0.15808870322491248884e-3L,
    -0.21026444172410488319e-3L,
    0.21743961811521264320e-3L,
    -0.16431810653676389022e-3L,
    0.84418223983852743293e-4L,
    -0.26190838401581408670e-4L,
    0.36899182659531622704e-5L,
};
constexpr long double kLogSqrt2Pi = 0.91893853320467274178032973640562L;
constexpr long double kPiL = 3.14159265358979323846264338327950L;

long double lanczos_sum(long double x) {
  long double s = kLanczos[0];
  for (int k = 1; k < 15; ++k) s += kLanczos[k] / (x + k - 1);
  return s;
}

// ln Gamma on x >= 0.5 (no reflection needed).
long double log_gamma_main(long double x) {
  const long double t = x + kLanczosG - 0.5L;
  return (x - 0.5L) * std::log(t) - t + kLogSqrt2Pi +
         std::log(lanczos_sum(x));
}

// sin(pi x) with argument reduction done on x, not on pi*x.
long double sin_pi(long double x) {
  long double r = std::fmod(x, 2.0L);
  if (r < 0) r += 2.0L;
  // fold to [0,1) remembering the sign of the half-period
  long double sign = 1.0L;
  if (r >= 1.0L) {
    r -= 1.0L;
    sign = -1.0L;
  }
  if (r > 0.5L) r = 1.0L - r;
  return sign * std::sin(kPiL * r);
}

long double log_gamma_ld(long double x) {
  if (x >= 0.5L) return log_gamma_main(x);
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  return std::log(kPiL / sin_pi(x)) - log_gamma_main(1.0L - x);
}

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error(std::string(who) + ": argument must be positive and finite");
}

// Bernoulli tail of the asymptotic digamma series: B_2k / (2k x^(2k)).
constexpr long double kDigammaTail[7] = {
    1.0L / 12.0L,   -1.0L / 120.0L,  1.0L / 252.0L, -1.0L / 240.0L,
    1.0L / 132.0L,  -691.0L / 32760.0L, 1.0L / 12.0L,
};

}  // namespace

BasisParams::BasisParams(double lambda_) : lambda(lambda_) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("BasisParams: lambda must be positive and finite");
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  return static_cast<double>(log_gamma_ld(x));
}

double log_gamma_ratio(double a, double b) {
  require_positive(a, "log_gamma_ratio");
  require_positive(b, "log_gamma_ratio");
  return static_cast<double>(log_gamma_ld(a) - log_gamma_ld(b));
}

double gamma_ratio(double a, double b) {
  return std::exp(log_gamma_ratio(a, b));
}

double digamma(double x) {
  require_positive(x, "digamma");
  long double z = x;
  long double acc = 0.0L;
  while (z < 10.0L) {
    acc -= 1.0L / z;
    z += 1.0L;
  }
  const long double inv2 = 1.0L / (z * z);
  long double tail = 0.0L;
  long double p = inv2;
  for (int k = 0; k < 7; ++k) {
    tail += kDigammaTail[k] * p;
    p *= inv2;
  }
  return static_cast<double>(acc + std::log(z) - 0.5L / z - tail);
}

double reciprocal_gamma(double x) {
  if (!std::isfinite(x)) throw std::domain_error("reciprocal_gamma: non-finite argument");
  if (x > 0.0) return std::exp(-static_cast<double>(log_gamma_ld(x)));
  if (x == std::floor(x)) return 0.0;  // pole of Gamma
  // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, assembled in log space
  const long double s = sin_pi(static_cast<long double>(x));
  const long double mag =
      std::log(std::abs(s) / kPiL) + log_gamma_ld(1.0L - static_cast<long double>(x));
  return static_cast<double>((s < 0 ? -1.0L : 1.0L) * std::exp(mag));
}

SignedLogGamma signed_log_gamma(double x) {
  if (!std::isfinite(x)) throw std::domain_error("signed_log_gamma: non-finite argument");
  if (x > 0.0) return {static_cast<double>(log_gamma_ld(x)), 1};
  if (x == std::floor(x)) return {std::numeric_limits<double>::infinity(), 0};
  const long double s = sin_pi(static_cast<long double>(x));
  const long double mag = std::log(kPiL / std::abs(s)) - log_gamma_ld(1.0L - static_cast<long double>(x));
  return {static_cast<double>(mag), s > 0 ? 1 : -1};
}

double c_lambda(double lambda) {
  require_positive(lambda, "c_lambda");
  const long double l = lambda;
  return static_cast<double>(std::exp(
      log_gamma_ld(2.0L * l + 1.0L) - 2.0L * l * std::log(2.0L) -
      2.0L * log_gamma_ld(l + 0.5L)));
}

double measure_mass(double nu) {
  if (!(nu > -0.5) || !std::isfinite(nu))
    throw std::domain_error("measure_mass: need nu > -1/2");
  const long double n = nu;
  return static_cast<double>(
      std::exp(0.5L * std::log(kPiL) + log_gamma_ld(n + 0.5L) - log_gamma_ld(n + 1.0L)));
}

double gegenbauer(int n, double lambda, double x) {
  if (n < 0) throw std::domain_error("gegenbauer: need n >= 0");
  require_positive(lambda, "gegenbauer");
  if (!std::isfinite(x) || x < -1.0 || x > 1.0)
    throw std::domain_error("gegenbauer: x outside [-1,1]");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * x;
  for (int k = 2; k <= n; ++k) {
    const double next =
        (2.0 * x * (k + lambda - 1.0) * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

double norm_sq(int n, const BasisParams& p) {
  if (n < 0) throw std::domain_error("norm_sq: need n >= 0");
  const long double l = p.lambda;
  // d_n^2 = lambda C_n^lambda(1) / (c_lambda (n + lambda)), with
  // C_n^lambda(1) = Gamma(n + 2 lambda) / (n! Gamma(2 lambda)).
  const long double log_cn1 =
      log_gamma_ld(n + 2.0L * l) - log_gamma_ld(n + 1.0L) - log_gamma_ld(2.0L * l);
  const long double log_cl =
      log_gamma_ld(2.0L * l + 1.0L) - 2.0L * l * std::log(2.0L) - 2.0L * log_gamma_ld(l + 0.5L);
  return static_cast<double>(
      std::exp(std::log(l) + log_cn1 - log_cl - std::log(n + l)));
}

double normalized_gegenbauer(int n, const BasisParams& p, double x) {
  if (n < 0) throw std::domain_error("normalized_gegenbauer: need n >= 0");
  if (!std::isfinite(x) || x < -1.0 || x > 1.0)
    throw std::domain_error("normalized_gegenbauer: x outside [-1,1]");
  const double nu = p.lambda;
  double prev = 1.0 / std::sqrt(measure_mass(nu));
  if (n == 0) return prev;
  double bk = 1.0 / (2.0 * nu + 2.0);  // b_1
  double cur = x * prev / std::sqrt(bk);
  for (int k = 1; k < n; ++k) {
    const double bk1 =
        (k + 1.0) * (k + 2.0 * nu) / (4.0 * (k + 1.0 + nu) * (k + nu));
    const double next = (x * cur - std::sqrt(bk) * prev) / std::sqrt(bk1);
    prev = cur;
    cur = next;
    bk = bk1;
  }
  return cur;
}

void normalized_gegenbauer_all(int nmax, double nu, double x, double* out) {
  if (nmax < 0) throw std::domain_error("normalized_gegenbauer_all: need nmax >= 0");
  if (!(nu > -0.5)) throw std::domain_error("normalized_gegenbauer_all: need nu > -1/2");
  if (!std::isfinite(x) || x < -1.0 || x > 1.0)
    throw std::domain_error("normalized_gegenbauer_all: x outside [-1,1]");
  out[0] = 1.0 / std::sqrt(measure_mass(nu));
  if (nmax == 0) return;
  double bk = 1.0 / (2.0 * nu + 2.0);  // b_1
  out[1] = x * out[0] / std::sqrt(bk);
  for (int k = 1; k < nmax; ++k) {
    const double bk1 =
        (k + 1.0) * (k + 2.0 * nu) / (4.0 * (k + 1.0 + nu) * (k + nu));
    out[k + 1] = (x * out[k] - std::sqrt(bk) * out[k - 1]) / std::sqrt(bk1);
    bk = bk1;
  }
}

}  // namespace ultrahardy
