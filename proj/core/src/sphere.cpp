#include "ultrahardy/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ultrahardy/fracop.hpp"
#include "ultrahardy/parallel.hpp"
#include "ultrahardy/quadrature.hpp"
#include "ultrahardy/specfun.hpp"

namespace ultrahardy {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double circle_harmonic(int j, int k, double theta) {
  if (j == 0) return 1.0 / std::sqrt(two_pi);
  const double norm = 1.0 / std::sqrt(std::numbers::pi);
  return (k == 1 ? std::cos(j * theta) : std::sin(j * theta)) * norm;
}

void check_channel(const SphereChannel& ch, const char* who) {
  const double expect = ch.j + 0.5;
  if (ch.j < 0 || (ch.k != 1 && ch.k != 2) || (ch.j == 0 && ch.k != 1) ||
      std::abs(ch.lambda_j - expect) > 1e-12 ||
      std::abs(ch.coeffs.lambda - expect) > 1e-12)
    throw std::invalid_argument(std::string(who) + ": malformed channel");
}

}  // namespace

int sphere_dim(int j, int d) {
  if (j < 0 || d < 2) throw std::invalid_argument("sphere_dim: need j >= 0, d >= 2");
  if (j == 0) return 1;
  const double lg = std::log(2.0 * j + d - 2.0) + log_gamma(j + d - 2.0) -
                    log_gamma(j + 1.0) - log_gamma(d - 1.0);
  return static_cast<int>(std::llround(std::exp(lg)));
}

double pole_weight(double t, double sigma) {
  if (!(std::abs(t) < 1.0))
    throw std::domain_error("pole_weight: t must lie in (-1, 1)");
  return std::exp2(sigma) * std::pow(1.0 - t * t, 0.5 * sigma);
}

SphereField decompose(const std::function<double(double, double)>& f,
                      int max_j, int max_n, int quad_nodes) {
  if (max_j < 0 || max_n < 0)
    throw std::invalid_argument("decompose: max_j and max_n must be >= 0");
  if (quad_nodes <= max_n)
    throw std::invalid_argument("decompose: quadrature too small for degree");
  const int ntheta = std::max(8, 4 * max_j);

  SphereField field;
  field.d = 2;
  field.max_j = max_j;
  for (int j = 0; j <= max_j; ++j)
    for (int k = 1; k <= sphere_dim(j, 2); ++k) {
      SphereChannel ch;
      ch.j = j;
      ch.k = k;
      ch.lambda_j = j + 0.5;
      field.channels.push_back(ch);
    }

  std::vector<QuadratureRule> rules(static_cast<std::size_t>(max_j) + 1);
  for (int j = 0; j <= max_j; ++j)
    rules[j] = gauss_gegenbauer(quad_nodes, BasisParams(j + 0.5));

  parallel_for(field.channels.size(), [&](std::size_t idx) {
    SphereChannel& ch = field.channels[idx];
    auto G = [&](double t) {
      double acc = 0.0;
      for (int l = 0; l < ntheta; ++l) {
        const double theta = two_pi * l / ntheta;
        acc += f(t, theta) * circle_harmonic(ch.j, ch.k, theta);
      }
      const double F = acc * two_pi / ntheta;
      return F * std::pow(1.0 - t * t, -0.5 * ch.j);
    };
    ch.coeffs = analyze(G, BasisParams(ch.lambda_j), max_n, rules[ch.j]);
  });
  return field;
}

double synthesize_sphere(const SphereField& field, double t, double theta) {
  double acc = 0.0;
  for (const SphereChannel& ch : field.channels) {
    const double radial = synthesize(ch.coeffs, t) *
                          std::pow(1.0 - t * t, 0.5 * ch.j);
    acc += radial * circle_harmonic(ch.j, ch.k, theta);
  }
  return acc;
}

SphereField apply_A_sigma_sphere(const SphereField& field, double sigma) {
  SphereField out = field;
  parallel_for(out.channels.size(), [&](std::size_t idx) {
    SphereChannel& ch = out.channels[idx];
    check_channel(ch, "apply_A_sigma_sphere");
    FracParams p(BasisParams(ch.lambda_j), sigma);
    ch.coeffs = apply_spectral(ch.coeffs, p);
  });
  return out;
}

HardyReport sphere_hardy_check(const SphereField& field, double sigma) {
  const double Q_base = hardy_constant(FracParams(BasisParams(0.5), sigma));
  std::vector<double> lhs_part(field.channels.size(), 0.0);
  std::vector<double> rhs_part(field.channels.size(), 0.0);
  parallel_for(field.channels.size(), [&](std::size_t idx) {
    const SphereChannel& ch = field.channels[idx];
    check_channel(ch, "sphere_hardy_check");
    FracParams p(BasisParams(ch.lambda_j), sigma);
    // Int F^2 (1-t^2)^(-sigma/2) dmu_(1/2) written on the profile G
    lhs_part[idx] = integrate_endpoint_singular(
        [&](double t) {
          const double g = synthesize(ch.coeffs, t);
          return g * g;
        },
        -0.5 * sigma, BasisParams(ch.lambda_j), 1e-12);
    rhs_part[idx] = quadratic_form(ch.coeffs, p);
  });

  HardyReport r;
  r.lambda = 0.5;
  r.sigma = sigma;
  for (std::size_t i = 0; i < field.channels.size(); ++i) {
    r.lhs += Q_base * lhs_part[i];
    r.rhs += rhs_part[i];
    const int n = field.channels[i].coeffs.coeffs.empty()
                      ? 0
                      : static_cast<int>(field.channels[i].coeffs.coeffs.size()) - 1;
    r.N = std::max(r.N, n);
  }
  r.deficit = r.rhs - r.lhs;
  r.pass = r.deficit >= -r.deficit_rel_tol * r.rhs;
  return r;
}

}  // namespace ultrahardy
