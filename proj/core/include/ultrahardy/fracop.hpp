#pragma once

#include <functional>
#include <vector>

#include "ultrahardy/quadrature.hpp"
#include "ultrahardy/transform.hpp"

namespace ultrahardy {

// Validity window for the exponent sigma.
//   kernel:   0 < sigma < 1; the nonlocal kernel representation is available.
//   extended: 0 < sigma < 2*lambda + 1; spectral and weight identities only.
enum class FracRegime { kernel, extended };

struct FracParams {
  BasisParams basis;
  double sigma;
  FracRegime regime;

  FracParams(const BasisParams& b, double s, FracRegime r = FracRegime::kernel);
};

// Eigenvalue of the operator on the degree-n orthonormal basis element:
// m_n = Gamma(n+lambda+(1+sigma)/2) / Gamma(n+lambda+(1-sigma)/2).
double multiplier(int n, const FracParams& p);

// a_n -> m_n a_n. Throws std::invalid_argument on a lambda mismatch.
CoefficientVector apply_spectral(const CoefficientVector& c, const FracParams& p);

// a_n -> (n+lambda)^sigma a_n.
CoefficientVector fractional_laplacian_spectral(const CoefficientVector& c,
                                                double sigma);

// sum_n m_n a_n^2.
double quadratic_form(const CoefficientVector& c, const FracParams& p);

struct KernelConstants {
  double D;         // kernel prefactor
  double E;         // zero-mode constant, equals multiplier(0, p)
  double c_lambda;  // normalization Gamma(2l+1)/(2^(2l) Gamma(l+1/2)^2)
};

// Constants of the nonlocal representation. Requires the kernel regime.
KernelConstants kernel_constants(const FracParams& p);

// Subordinated semigroup kernel
//   P_t(x,y) = (c_l^2 / 2^l) sinh(t) Int (cosh t - w(s))^-(l+1) dmu_{l-1/2}(s),
//   w(s) = x y + sqrt(1-x^2) sqrt(1-y^2) s.
// rule_inner must be a Gauss rule for the measure with parameter lambda-1/2.
// Falls back to graded panels when the rule cannot resolve the near-diagonal
// peak, so accuracy is kept for small t as well.
double poisson_kernel(double t, double x, double y, const BasisParams& p,
                      const QuadratureRule& rule_inner);

// Off-diagonal kernel K(x,y) = D Int (1 - w(s))^-(l+(1+s)/2) dmu_{l-1/2}(s).
// Kernel regime only; throws std::domain_error when x == y.
double kernel_K(double x, double y, const FracParams& p,
                const QuadratureRule& rule_inner);

// Adaptive quadrature of the subordination integral
//   Int_0^inf (e^{-(n+l)t} - e^{-(s-1)t/2}) (sinh t/2)^{-s-1} dt,
// which equals 2^{1+s} Gamma(-s) m_n. Negative in the kernel regime.
double multiplier_time_integral(int n, const FracParams& p);

// Precomputed node/weight/kernel data for repeated nonlocal applications at a
// fixed evaluation point x0. Weights carry the measure and K(x0, y) already,
// so apply() only samples f.
class NonlocalPlan {
 public:
  NonlocalPlan(double x0, const FracParams& p, const QuadratureRule& rule_inner);

  // Int (f(x0) - f(y)) K(x0,y) dmu(y) + E f(x0), with a geometric tail
  // estimate for the dyadic levels collapsing onto x0.
  double apply(const std::function<double(double)>& f) const;

  double x0() const { return x0_; }

 private:
  double x0_;
  double E_;
  std::vector<double> y_;
  std::vector<double> kw_;  // weight * K(x0, y)
  std::vector<int> level_;
  int max_level_;
};

// One-shot form of NonlocalPlan: builds the plan and applies it to f.
double apply_nonlocal(const std::function<double(double)>& f, double x,
                      const FracParams& p, const QuadratureRule& rule_inner);

// Cached 2-D kernel grid for double-integral quadratic forms. Construction
// evaluates K on the full off-diagonal grid (parallelized); afterwards each
// form evaluation is a weighted sum.
class KernelForm {
 public:
  KernelForm(const FracParams& p, const QuadratureRule& rule_inner,
             const Offdiag2dOptions& opt = Offdiag2dOptions{});

  // (1/2) IntInt (f(x)-f(y))^2 K(x,y) dmu(x) dmu(y)
  double half_double_integral(const std::function<double(double)>& f) const;

  // (1/2) IntInt h(x,y) K(x,y) dmu(x) dmu(y) for symmetric h
  double weighted_half_double_integral(
      const std::function<double(double, double)>& h) const;

  const FracParams& params() const { return p_; }
  double zero_mode() const { return E_; }

 private:
  double ladder_sum(const std::function<double(double, double)>& h) const;

  FracParams p_;
  double E_;
  OffdiagGrid grid_;
  std::vector<double> kw_;  // wx * wy * K at each (x_i, y_ij)
};

}  // namespace ultrahardy
