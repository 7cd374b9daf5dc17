#include "ultrahardy/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ultrahardy/specfun.hpp"
#include "detail_panels.hpp"

namespace ultrahardy {

namespace {

double square(double v) { return v * v; }

double hardy_constant_raw(double sigma, double lam) {
  const double r = gamma_ratio(0.5 * lam + 0.25 * (1.0 + sigma),
                               0.5 * lam + 0.25 * (1.0 - sigma));
  return std::exp2(sigma) * r * r;
}

double multiplier_raw(int n, double sigma, double lam) {
  const double base = n + lam;
  return gamma_ratio(base + 0.5 * (1.0 + sigma), base + 0.5 * (1.0 - sigma));
}

double weighted_mass(const CoefficientVector& u, double exponent) {
  const BasisParams b(u.lambda);
  return integrate_endpoint_singular(
      [&](double x) { return square(synthesize(u, x)); }, exponent, b, 1e-12);
}

// Int log(sqrt(1-x^2)) u^2 dmu, graded toward both endpoints so the log
// singularity in the integrand costs nothing.
double log_weight_integral(const CoefficientVector& u) {
  std::vector<double> ys, ws;
  std::vector<int> lv;
  detail::edge_segment(u.lambda, 0.0, 1.0, 48, 12, ys, ws, lv);
  detail::edge_segment(u.lambda, 0.0, -1.0, 48, 12, ys, ws, lv);
  double acc = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double y = ys[i];
    const double uy = synthesize(u, y);
    acc += ws[i] * 0.5 * std::log((1.0 - y) * (1.0 + y)) * uy * uy;
  }
  return acc;
}

double parseval_mass(const CoefficientVector& u) {
  double acc = 0.0;
  for (double a : u.coeffs) acc += a * a;
  return acc;
}

}  // namespace

double hardy_constant(const FracParams& p) {
  return hardy_constant_raw(p.sigma, p.basis.lambda);
}

double hardy_lhs(const std::function<double(double)>& u, const FracParams& p) {
  const double w = integrate_endpoint_singular(
      [&](double x) { return square(u(x)); }, -0.5 * p.sigma, p.basis, 1e-12);
  return hardy_constant(p) * w;
}

double hardy_lhs(const CoefficientVector& u, const FracParams& p) {
  return hardy_lhs([&](double x) { return synthesize(u, x); }, p);
}

HardyReport hardy_check(const CoefficientVector& u, const FracParams& p) {
  if (std::abs(u.lambda - p.basis.lambda) > 1e-12)
    throw std::invalid_argument("hardy_check: lambda mismatch");
  HardyReport r;
  r.lambda = p.basis.lambda;
  r.sigma = p.sigma;
  r.N = u.coeffs.empty() ? 0 : static_cast<int>(u.coeffs.size()) - 1;
  r.lhs = hardy_lhs(u, p);
  r.rhs = quadratic_form(u, p);
  r.deficit = r.rhs - r.lhs;
  r.pass = r.deficit >= -r.deficit_rel_tol * r.rhs;
  return r;
}

HardyReport hardy_check(const std::function<double(double)>& u,
                        const FracParams& p, int degree,
                        const QuadratureRule& rule) {
  return hardy_check(analyze(u, p.basis, degree, rule), p);
}

double ground_state_deficit(const std::function<double(double)>& u,
                            const KernelForm& form) {
  const double lam = form.params().basis.lambda;
  const double a = 0.5 * lam + 0.25 * (1.0 - form.params().sigma);
  return form.weighted_half_double_integral([&](double x, double y) {
    const double px = std::pow((1.0 - x) * (1.0 + x), a);
    const double py = std::pow((1.0 - y) * (1.0 + y), a);
    const double d = u(x) * px - u(y) * py;
    return d * d / (px * py);
  });
}

double beta_moment(int m, double beta, const BasisParams& p) {
  if (m < 0) throw std::invalid_argument("beta_moment: m must be >= 0");
  if (!(beta > 0.0))
    throw std::domain_error("beta_moment: beta must be positive");
  const double lam = p.lambda;
  double sign = 1.0;
  double logp = 0.0;  // log |(beta - lam - m + 1/2)_m|
  for (int i = 0; i < m; ++i) {
    const double term = beta - lam - m + 0.5 + i;
    if (term == 0.0) return 0.0;
    if (term < 0.0) sign = -sign;
    logp += std::log(std::abs(term));
  }
  // 1/Gamma(1/2 - m) = (-1)^m Gamma(m + 1/2) / pi by reflection
  if (m % 2 == 1) sign = -sign;
  const double logmag =
      log_gamma(2.0 * lam + 2.0 * m) - log_gamma(2.0 * lam) -
      log_gamma(2.0 * m + 1.0) + log_gamma(beta) -
      log_gamma(beta + m + 0.5) + log_gamma(lam + 0.5) -
      log_gamma(lam + m + 0.5) + log_gamma(m + 0.5) + logp;
  return sign * std::exp(logmag);
}

std::pair<double, double> power_weight_ratio_check(int m, const FracParams& p) {
  const double lam = p.basis.lambda;
  const double alpha = 0.5 * lam + 0.25 * (1.0 - p.sigma);
  const double num = beta_moment(m, alpha, p.basis);
  const double den = beta_moment(m, alpha + 0.5 * p.sigma, p.basis);
  const double lhs = num / den;
  const double rhs = gamma_ratio(2.0 * m + 2.0 * alpha + p.sigma,
                                 2.0 * m + 2.0 * alpha) /
                     hardy_constant(p);
  return {lhs, rhs};
}

PowerWeightCheck power_weight_operator_check(const FracParams& p, int N,
                                             int coeff_n_max,
                                             int grid_points) {
  if (N < 0 || grid_points < 2)
    throw std::invalid_argument("power_weight_operator_check: bad sizes");
  const double lam = p.basis.lambda;
  const double alpha = 0.5 * lam + 0.25 * (1.0 - p.sigma);
  const double Q = hardy_constant(p);

  PowerWeightCheck out{0.0, 0.0};
  for (int n = 0; n <= coeff_n_max; n += 2) {
    const double dn = std::sqrt(norm_sq(n, p.basis));
    const double src = beta_moment(n / 2, alpha + 0.5 * p.sigma, p.basis) / dn;
    const double tgt = Q * beta_moment(n / 2, alpha, p.basis) / dn;
    const double applied = multiplier(n, p) * src;
    out.max_coeff_rel_err =
        std::max(out.max_coeff_rel_err, std::abs(applied / tgt - 1.0));
  }

  CoefficientVector c;
  c.lambda = lam;
  c.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = 0; n <= N; n += 2)
    c.coeffs[static_cast<std::size_t>(n)] =
        beta_moment(n / 2, alpha + 0.5 * p.sigma, p.basis) /
        std::sqrt(norm_sq(n, p.basis));
  const CoefficientVector img = apply_spectral(c, p);
  for (int i = 0; i < grid_points; ++i) {
    const double x = -0.9 + 1.8 * i / (grid_points - 1);
    const double want = Q * std::pow(1.0 - x * x, -alpha - 0.5 * p.sigma);
    const double got = synthesize(img, x);
    out.max_pointwise_rel_err =
        std::max(out.max_pointwise_rel_err, std::abs(got / want - 1.0));
  }
  return out;
}

double heisenberg_check(const CoefficientVector& u, const FracParams& p) {
  if (std::abs(u.lambda - p.basis.lambda) > 1e-12)
    throw std::invalid_argument("heisenberg_check: lambda mismatch");
  const double mplus = weighted_mass(u, 0.5 * p.sigma);
  const double mass = parseval_mass(u);
  return mplus * quadratic_form(u, p) - hardy_constant(p) * mass * mass;
}

double log_uncertainty_gap(const CoefficientVector& u) {
  const double lam = u.lambda;
  double spectral = 0.0;
  for (std::size_t n = 0; n < u.coeffs.size(); ++n)
    spectral += digamma(static_cast<double>(n) + lam + 0.5) * u.coeffs[n] *
                u.coeffs[n];
  const double mass = parseval_mass(u);
  return spectral + log_weight_integral(u) -
         (std::log(2.0) + digamma(0.5 * lam + 0.25)) * mass;
}

double phi(double sigma, const CoefficientVector& u) {
  const double lam = u.lambda;
  double qsum = 0.0;
  for (std::size_t n = 0; n < u.coeffs.size(); ++n)
    qsum += multiplier_raw(static_cast<int>(n), sigma, lam) * u.coeffs[n] *
            u.coeffs[n];
  return qsum - hardy_constant_raw(sigma, lam) * weighted_mass(u, -0.5 * sigma);
}

SharpnessProbe sharpness_probe(const FracParams& p,
                               const std::vector<double>& eps_sequence,
                               int N) {
  if (N < 0) throw std::invalid_argument("sharpness_probe: N must be >= 0");
  const double lam = p.basis.lambda;
  const double sg = p.sigma;
  const double alpha = 0.5 * lam + 0.25 * (1.0 - sg);
  const double logpi = std::log(std::numbers::pi);
  SharpnessProbe out;
  out.Q = hardy_constant(p);

  // The numerator series Sum_m m_{2m} a_{2m}^2 has terms ~ m^{-1-4 eps}, so
  // for small eps no fixed truncation carries enough of the mass (at
  // eps = 1/64 roughly half of it sits beyond m = 2e4). Sum explicitly to M,
  // then complete the tail from the power-law asymptotics with a Richardson
  // estimate of the leading constant; the completion error is O(M^-2) of the
  // tail, far below the quotient's eps-scale structure.
  const int M = std::max(N, 8192);
  const double mshift = lam + 0.5 * (1.0 + sg);
  const double logh_const =
      logpi + (1.0 - 2.0 * lam) * std::log(2.0) - 2.0 * log_gamma(lam);

  for (double eps : eps_sequence) {
    if (!(eps > 0.0))
      throw std::domain_error("sharpness_probe: eps must be positive");
    const double beta = alpha + 0.5 * sg + eps;
    const double w = beta - lam + 0.5;
    const double sinw = std::abs(std::sin(std::numbers::pi * w));
    // log|Gamma(w - m)| with the exact reduction sin(pi(w-m)) = ±sin(pi w)
    auto log_abs_gamma_shift = [&](double m) {
      const double z = w - m;
      if (z > 0.0) return log_gamma(z);
      return logpi - std::log(sinw) - log_gamma(1.0 - z);
    };
    const double lgw = log_abs_gamma_shift(0.0);
    auto log_term = [&](int m) {
      const double md = m;
      const double lm = log_gamma(2.0 * md + mshift) -
                        log_gamma(2.0 * md + mshift - sg);
      const double li = log_gamma(2.0 * lam + 2.0 * md) - log_gamma(2.0 * lam) -
                        log_gamma(2.0 * md + 1.0) + log_gamma(beta) -
                        log_gamma(beta + md + 0.5) + log_gamma(lam + 0.5) -
                        log_gamma(lam + md + 0.5) + log_gamma(md + 0.5) +
                        lgw - log_abs_gamma_shift(md);
      const double lh = logh_const + log_gamma(2.0 * md + 2.0 * lam) -
                        log_gamma(2.0 * md + 1.0) - std::log(2.0 * md + lam);
      return lm + 2.0 * li - lh;
    };

    double num = 0.0, t_half = 0.0, t_last = 0.0;
    bool terminated = false;
    for (int m = 0; m <= M; ++m) {
      double t;
      if (sinw > 1e-12) {
        t = std::exp(log_term(m));
      } else {
        // integer w: the trial function is a polynomial, series terminates
        const double Im = beta_moment(m, beta, p.basis);
        if (Im == 0.0) { terminated = true; break; }
        const double lm = log_gamma(2.0 * m + mshift) -
                          log_gamma(2.0 * m + mshift - sg);
        const double lh = logh_const + log_gamma(2.0 * m + 2.0 * lam) -
                          log_gamma(2.0 * m + 1.0) - std::log(2.0 * m + lam);
        t = std::exp(lm - lh) * Im * Im;
      }
      num += t;
      if (m == M / 2) t_half = t;
      t_last = t;
    }
    if (!terminated) {
      const double s = 4.0 * eps;
      const double c_full = t_last * std::pow(M, 1.0 + s);
      const double c_half = t_half * std::pow(M / 2, 1.0 + s);
      const double c = 2.0 * c_full - c_half;
      num += c * (std::pow(M, -s) / s - 0.5 * std::pow(M, -1.0 - s));
    }

    // Int u_eps^2 (1-x^2)^(-sigma/2) dmu collapses to Beta(1/2, 2 eps)
    const double den = std::sqrt(std::numbers::pi) *
                       std::exp(log_gamma(2.0 * eps) -
                                log_gamma(2.0 * eps + 0.5));
    out.ratios.push_back(num / den);
  }
  const std::size_t k = out.ratios.size();
  if (k >= 3) {
    const double s0 = out.ratios[k - 3], s1 = out.ratios[k - 2],
                 s2 = out.ratios[k - 1];
    const double den = s2 - 2.0 * s1 + s0;
    out.extrapolated = (den != 0.0) ? s2 - square(s2 - s1) / den : s2;
  } else {
    out.extrapolated = k ? out.ratios.back() : 0.0;
  }
  return out;
}

}  // namespace ultrahardy
