#include "ultrahardy/fracop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ultrahardy/parallel.hpp"
#include "ultrahardy/specfun.hpp"
#include "detail_panels.hpp"

namespace ultrahardy {

namespace {

void check_regime(const FracParams& p) {
  if (!(p.sigma > 0.0))
    throw std::domain_error("FracParams: sigma must be positive");
  const double upper =
      (p.regime == FracRegime::kernel) ? 1.0 : 2.0 * p.basis.lambda + 1.0;
  if (!(p.sigma < upper))
    throw std::domain_error("FracParams: sigma outside the declared regime");
}

void require_kernel_regime(const FracParams& p, const char* who) {
  if (p.regime != FracRegime::kernel || !(p.sigma > 0.0 && p.sigma < 1.0))
    throw std::domain_error(std::string(who) +
                            ": needs the kernel regime (0 < sigma < 1)");
}

void check_inner_rule(const QuadratureRule& rule, double lambda,
                      const char* who) {
  if (std::abs(rule.lambda - (lambda - 0.5)) > 1e-12)
    throw std::invalid_argument(std::string(who) +
                                ": inner rule must carry parameter lambda-1/2");
}

// 1 - x y - sqrt((1-x^2)(1-y^2)) without cancellation: multiply through by the
// conjugate to get (x-y)^2 / (1 - x y + sqrt((1-x^2)(1-y^2))).
double diagonal_gap(double x, double y, double B) {
  const double d = x - y;
  return d * d / ((1.0 - x * y) + B);
}

// Int_0^2 (delta + B s)^(-g) (s(2-s))^(lam-1) ds. The s -> 0 end carries both
// the (possibly sharp) peak of width delta/B and the s^(lam-1) weight; the
// substitution s = xi^(2/lam) turns the weight into a linear factor and the
// panel count adapts to the peak. The s -> 2 end is handled symmetrically.
double weighted_peak_integral(double delta, double B, double lam, double g,
                              int points) {
  const double q = 2.0 / lam;
  int levels = 14;
  if (delta < B) {
    levels = static_cast<int>(std::ceil(0.5 * lam * std::log2(B / delta))) + 14;
    levels = std::min(levels, 300);
  }
  auto near = [&](double xi) {
    const double s = std::pow(xi, q);
    return q * xi * std::pow(delta + B * s, -g) * std::pow(2.0 - s, lam - 1.0);
  };
  auto far = [&](double zeta) {
    const double u = std::pow(zeta, q);  // u = 2 - s
    return q * zeta * std::pow(delta + B * (2.0 - u), -g) *
           std::pow(2.0 - u, lam - 1.0);
  };
  return integrate_graded(near, 0.0, 1.0, levels, 0, points) +
         integrate_graded(far, 0.0, 1.0, 14, 0, points);
}

// True when the supplied Gauss rule resolves a peak of relative width ratio
// at the s = 1 end of (-1, 1).
bool rule_resolves(double ratio, std::size_t n) {
  return ratio * static_cast<double>(n) * static_cast<double>(n) >= 60.0;
}

// Combined constant of the subordination route. The product formula for the
// basis carries the normalization of the parameter-(lambda-1/2) measure (its
// reciprocal mass), so the prefactor is c_lambda / mass(mu_(lambda-1/2)),
// not c_lambda squared.
double poisson_front(double lam) {
  return c_lambda(lam) / (measure_mass(lam - 0.5) * std::exp2(lam));
}

double kernel_prefactor(const FracParams& p) {
  const double lam = p.basis.lambda;
  const double s = p.sigma;
  const double log_abs_gamma_ms = log_gamma(1.0 - s) - std::log(s);
  const double logD = std::log(c_lambda(lam)) -
                      std::log(measure_mass(lam - 0.5)) +
                      log_gamma(0.5 * (1.0 - s)) +
                      log_gamma(lam + 0.5 * (1.0 + s)) -
                      (lam + 0.5 * (1.0 + s)) * std::log(2.0) -
                      log_abs_gamma_ms - log_gamma(1.0 + lam);
  return std::exp(logD);
}

double kernel_value(double x, double y, const FracParams& p,
                    const QuadratureRule& rule, double D) {
  const double lam = p.basis.lambda;
  const double g = lam + 0.5 * (1.0 + p.sigma);
  const double B = std::sqrt((1.0 - x * x) * (1.0 - y * y));
  const double delta = diagonal_gap(x, y, B);
  if (delta == 0.0)
    throw std::domain_error("kernel_K: x and y coincide to machine precision");
  double inner;
  if (rule_resolves(delta / B, rule.nodes.size())) {
    inner = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      inner += rule.weights[i] *
               std::pow(delta + B * (1.0 - rule.nodes[i]), -g);
  } else {
    inner = weighted_peak_integral(delta, B, lam, g, 12);
  }
  return D * inner;
}

}  // namespace

FracParams::FracParams(const BasisParams& b, double s, FracRegime r)
    : basis(b), sigma(s), regime(r) {
  check_regime(*this);
}

double multiplier(int n, const FracParams& p) {
  if (n < 0) throw std::invalid_argument("multiplier: n must be >= 0");
  const double base = n + p.basis.lambda;
  return gamma_ratio(base + 0.5 * (1.0 + p.sigma),
                     base + 0.5 * (1.0 - p.sigma));
}

CoefficientVector apply_spectral(const CoefficientVector& c,
                                 const FracParams& p) {
  if (std::abs(c.lambda - p.basis.lambda) > 1e-12)
    throw std::invalid_argument("apply_spectral: lambda mismatch");
  CoefficientVector out = c;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n)
    out.coeffs[n] *= multiplier(static_cast<int>(n), p);
  return out;
}

CoefficientVector fractional_laplacian_spectral(const CoefficientVector& c,
                                                double sigma) {
  CoefficientVector out = c;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n)
    out.coeffs[n] *= std::pow(static_cast<double>(n) + c.lambda, sigma);
  return out;
}

double quadratic_form(const CoefficientVector& c, const FracParams& p) {
  if (std::abs(c.lambda - p.basis.lambda) > 1e-12)
    throw std::invalid_argument("quadratic_form: lambda mismatch");
  double acc = 0.0;
  for (std::size_t n = 0; n < c.coeffs.size(); ++n)
    acc += multiplier(static_cast<int>(n), p) * c.coeffs[n] * c.coeffs[n];
  return acc;
}

KernelConstants kernel_constants(const FracParams& p) {
  require_kernel_regime(p, "kernel_constants");
  KernelConstants k;
  k.c_lambda = c_lambda(p.basis.lambda);
  k.E = multiplier(0, p);
  k.D = kernel_prefactor(p);
  return k;
}

double poisson_kernel(double t, double x, double y, const BasisParams& p,
                      const QuadratureRule& rule_inner) {
  if (!(t > 0.0)) throw std::domain_error("poisson_kernel: t must be positive");
  if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0))
    throw std::domain_error("poisson_kernel: x, y must lie in (-1, 1)");
  check_inner_rule(rule_inner, p.lambda, "poisson_kernel");
  const double lam = p.lambda;
  const double B = std::sqrt((1.0 - x * x) * (1.0 - y * y));
  const double sh = std::sinh(0.5 * t);
  // cosh t - 1 + (1 - x y - B), both pieces cancellation-free
  const double delta = 2.0 * sh * sh + diagonal_gap(x, y, B);
  const double front = poisson_front(lam) * std::sinh(t);
  double inner;
  if (rule_resolves(delta / B, rule_inner.nodes.size())) {
    inner = 0.0;
    for (std::size_t i = 0; i < rule_inner.nodes.size(); ++i)
      inner += rule_inner.weights[i] *
               std::pow(delta + B * (1.0 - rule_inner.nodes[i]), -(lam + 1.0));
  } else {
    inner = weighted_peak_integral(delta, B, lam, lam + 1.0, 12);
  }
  return front * inner;
}

double kernel_K(double x, double y, const FracParams& p,
                const QuadratureRule& rule_inner) {
  require_kernel_regime(p, "kernel_K");
  if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0))
    throw std::domain_error("kernel_K: x, y must lie in (-1, 1)");
  if (x == y) throw std::domain_error("kernel_K: x == y");
  check_inner_rule(rule_inner, p.basis.lambda, "kernel_K");
  return kernel_value(x, y, p, rule_inner, kernel_prefactor(p));
}

double multiplier_time_integral(int n, const FracParams& p) {
  if (n < 0)
    throw std::invalid_argument("multiplier_time_integral: n must be >= 0");
  require_kernel_regime(p, "multiplier_time_integral");
  const double lam = p.basis.lambda;
  const double s = p.sigma;
  const double a = n + lam;             // decay rate of the semigroup term
  const double b = 0.5 * (1.0 - s);     // growth rate of the mass term
  // integrand of Int_0^inf (e^{-at} - e^{bt}) (sinh t/2)^{-s-1} dt after the
  // compactification v = 1 - e^{-t}; the difference goes through expm1 so the
  // t -> 0 cancellation is exact.
  auto core = [&](double v) {
    const double t = -std::log1p(-v);
    const double diff = std::expm1(-a * t) - std::expm1(b * t);
    return diff * std::pow(std::sinh(0.5 * t), -s - 1.0) / (1.0 - v);
  };
  const double pa = 2.0 / (1.0 - s);
  auto lower = [&](double xi) {
    return pa * std::pow(xi, pa - 1.0) * core(std::pow(xi, pa));
  };
  const double ha = std::pow(0.5, 1.0 / pa);
  const double pb = 2.0 / s;
  auto upper = [&](double zeta) {
    const double one_minus_v = std::pow(zeta, pb);
    const double t = -pb * std::log(zeta);
    const double diff = std::expm1(-a * t) - std::expm1(b * t);
    return pb * std::pow(std::sinh(0.5 * t), -s - 1.0) * diff *
           std::pow(zeta, pb - 1.0) / one_minus_v;
  };
  const double hb = std::pow(0.5, 1.0 / pb);
  return integrate_graded(lower, 0.0, ha, 24, 0, 12) +
         integrate_graded(upper, 0.0, hb, 24, 0, 12);
}

NonlocalPlan::NonlocalPlan(double x0, const FracParams& p,
                           const QuadratureRule& rule_inner)
    : x0_(x0) {
  require_kernel_regime(p, "NonlocalPlan");
  if (!(std::abs(x0) < 1.0))
    throw std::domain_error("NonlocalPlan: x0 must lie in (-1, 1)");
  check_inner_rule(rule_inner, p.basis.lambda, "NonlocalPlan");
  const double lam = p.basis.lambda;
  const int base_depth = 8, diag_levels = 22, edge_levels = 30, pts = 10;
  max_level_ = diag_levels;
  const double mr = 0.5 * (x0 + 1.0);
  const double ml = 0.5 * (x0 - 1.0);
  std::vector<double> w;
  detail::diag_segment(lam, x0, mr, base_depth, diag_levels, pts, y_, w, level_);
  detail::edge_segment(lam, mr, 1.0, edge_levels, pts, y_, w, level_);
  detail::diag_segment(lam, x0, ml, base_depth, diag_levels, pts, y_, w, level_);
  detail::edge_segment(lam, ml, -1.0, edge_levels, pts, y_, w, level_);
  E_ = multiplier(0, p);
  const double D = kernel_prefactor(p);
  kw_.resize(y_.size());
  for (std::size_t i = 0; i < y_.size(); ++i)
    kw_[i] = w[i] * kernel_value(x0, y_[i], p, rule_inner, D);
}

double NonlocalPlan::apply(const std::function<double(double)>& f) const {
  const double f0 = f(x0_);
  std::vector<double> tier(static_cast<std::size_t>(max_level_) + 1, 0.0);
  for (std::size_t i = 0; i < y_.size(); ++i)
    tier[static_cast<std::size_t>(level_[i])] += kw_[i] * (f0 - f(y_[i]));
  double total = 0.0;
  for (double t : tier) total += t;
  // geometric continuation of the dyadic tiers collapsing onto x0
  const double t2 = tier[tier.size() - 2], t1 = tier[tier.size() - 1];
  if (t1 != 0.0 && t2 != 0.0) {
    const double r = t1 / t2;
    if (r > 0.0 && r < 0.95) total += t1 * r / (1.0 - r);
  }
  return total + E_ * f0;
}

double apply_nonlocal(const std::function<double(double)>& f, double x,
                      const FracParams& p, const QuadratureRule& rule_inner) {
  return NonlocalPlan(x, p, rule_inner).apply(f);
}

KernelForm::KernelForm(const FracParams& p, const QuadratureRule& rule_inner,
                       const Offdiag2dOptions& opt)
    : p_(p) {
  require_kernel_regime(p, "KernelForm");
  check_inner_rule(rule_inner, p.basis.lambda, "KernelForm");
  E_ = multiplier(0, p);
  grid_ = make_offdiag_grid(p.basis.lambda, opt);
  const double D = kernel_prefactor(p);
  kw_.assign(grid_.y.size(), 0.0);
  parallel_for(grid_.x.size(), [&](std::size_t i) {
    const double xi = grid_.x[i];
    for (std::size_t jj = grid_.offset[i]; jj < grid_.offset[i + 1]; ++jj)
      kw_[jj] = grid_.wx[i] * grid_.wy[jj] *
                kernel_value(xi, grid_.y[jj], p_, rule_inner, D);
  });
}

double KernelForm::ladder_sum(
    const std::function<double(double, double)>& h) const {
  std::vector<double> tier(static_cast<std::size_t>(grid_.max_level) + 1, 0.0);
  for (std::size_t i = 0; i + 1 < grid_.offset.size(); ++i) {
    const double xi = grid_.x[i];
    for (std::size_t jj = grid_.offset[i]; jj < grid_.offset[i + 1]; ++jj)
      tier[static_cast<std::size_t>(grid_.ylevel[jj])] +=
          kw_[jj] * h(xi, grid_.y[jj]);
  }
  double total = 0.0;
  for (double t : tier) total += t;
  const double t2 = tier[tier.size() - 2], t1 = tier[tier.size() - 1];
  if (t1 != 0.0 && t2 != 0.0) {
    const double r = t1 / t2;
    if (r > 0.0 && r < 0.95) total += t1 * r / (1.0 - r);
  }
  return total;
}

double KernelForm::half_double_integral(
    const std::function<double(double)>& f) const {
  return ladder_sum([&](double x, double y) {
    const double d = f(x) - f(y);
    return 0.5 * d * d;
  });
}

double KernelForm::weighted_half_double_integral(
    const std::function<double(double, double)>& h) const {
  return ladder_sum([&](double x, double y) { return 0.5 * h(x, y); });
}

}  // namespace ultrahardy
