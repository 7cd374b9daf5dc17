#include "ultrahardy/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace ultrahardy {

CoefficientVector analyze(const std::function<double(double)>& f, const BasisParams& p,
                          int degree, const QuadratureRule& rule) {
  if (degree < 0) throw std::invalid_argument("analyze: need degree >= 0");
  if (rule.lambda != p.lambda)
    throw std::invalid_argument("analyze: rule was generated for a different lambda");
  CoefficientVector out;
  out.lambda = p.lambda;
  out.coeffs.assign(degree + 1, 0.0);
  std::vector<double> basis(degree + 1);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v))
      throw std::domain_error("analyze: function evaluated non-finite at a node");
    normalized_gegenbauer_all(degree, p.lambda, rule.nodes[i], basis.data());
    const double wv = rule.weights[i] * v;
    for (int n = 0; n <= degree; ++n) out.coeffs[n] += wv * basis[n];
  }
  return out;
}

double synthesize(const CoefficientVector& c, double x) {
  if (!std::isfinite(x) || x < -1.0 || x > 1.0)
    throw std::domain_error("synthesize: x outside [-1,1]");
  if (c.coeffs.empty()) return 0.0;
  const int nmax = static_cast<int>(c.coeffs.size()) - 1;
  std::vector<double> basis(nmax + 1);
  normalized_gegenbauer_all(nmax, c.lambda, x, basis.data());
  double s = 0.0;
  for (int n = 0; n <= nmax; ++n) s += c.coeffs[n] * basis[n];
  return s;
}

double parseval_gap(const std::function<double(double)>& f, const CoefficientVector& c,
                    const QuadratureRule& rule) {
  const double mass = integrate(rule, [&](double x) {
    const double v = f(x);
    return v * v;
  });
  double sum = 0.0;
  for (double a : c.coeffs) sum += a * a;
  return std::abs(mass - sum);
}

double sobolev_norm(const CoefficientVector& c, double s) {
  double acc = 0.0;
  for (std::size_t n = 0; n < c.coeffs.size(); ++n)
    acc += std::pow(n + c.lambda, s) * c.coeffs[n] * c.coeffs[n];
  return std::sqrt(acc);
}

}  // namespace ultrahardy
