#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ultrahardy/fracop.hpp"

namespace ultrahardy {

struct HardyReport {
  double lambda = 0.0;
  double sigma = 0.0;
  int N = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;  // rhs - lhs
  bool has_gsr = false;
  double gsr_value = 0.0;
  bool pass = false;
  double deficit_rel_tol = 1e-9;  // pass iff deficit >= -tol * rhs
  double gsr_rel_tol = 1e-4;      // |deficit - gsr_value| <= tol * rhs
};

std::string to_json(const HardyReport& r);
HardyReport hardy_report_from_json(const std::string& text);

// Q = 2^sigma (Gamma(lambda/2+(1+sigma)/4) / Gamma(lambda/2+(1-sigma)/4))^2.
double hardy_constant(const FracParams& p);

// Q * Int u^2 (1-x^2)^(-sigma/2) dmu.
double hardy_lhs(const std::function<double(double)>& u, const FracParams& p);
double hardy_lhs(const CoefficientVector& u, const FracParams& p);

// Weighted mass vs quadratic form; pass iff deficit >= -tol * rhs.
HardyReport hardy_check(const CoefficientVector& u, const FracParams& p);
HardyReport hardy_check(const std::function<double(double)>& u,
                        const FracParams& p, int degree,
                        const QuadratureRule& rule);

// (1/2) IntInt g(x)g(y) (u/g(x) - u/g(y))^2 K dmu dmu with the ground-state
// weight g(x) = (1-x^2)^(-lambda/2-(1-sigma)/4). Equals the Hardy deficit.
double ground_state_deficit(const std::function<double(double)>& u,
                            const KernelForm& form);

// Int_(-1)^1 (1-x^2)^(beta-1) C_(2m)(x) dx in closed form (zero exactly on
// the orthogonality cases). Requires beta > 0.
double beta_moment(int m, double beta, const BasisParams& p);

// Both sides of the moment-ratio identity behind the power-weight mapping:
// first = I_m(alpha) / I_m(alpha+sigma/2), second = gamma-ratio side / Q,
// with alpha = lambda/2 + (1-sigma)/4. They agree to roundoff.
std::pair<double, double> power_weight_ratio_check(int m, const FracParams& p);

struct PowerWeightCheck {
  double max_coeff_rel_err;      // coefficient ratio vs multiplier, even n
  double max_pointwise_rel_err;  // synthesized operator image vs closed form
};

// The operator maps (1-x^2)^(-alpha) to Q (1-x^2)^(-alpha-sigma/2).
// Coefficients of both sides come from beta_moment, so the coefficient check
// is pure Gamma algebra; the pointwise check synthesizes at truncation N on
// the interior grid |x| <= 0.9.
PowerWeightCheck power_weight_operator_check(const FracParams& p, int N,
                                             int coeff_n_max, int grid_points);

// slack = Int u^2 (1-x^2)^(sigma/2) dmu * <u, A u> - Q (Int u^2 dmu)^2 >= 0.
double heisenberg_check(const CoefficientVector& u, const FracParams& p);

// gap = sum psi(n+lambda+1/2) a_n^2 + Int log(sqrt(1-x^2)) u^2 dmu
//       - (log 2 + psi(lambda/2+1/4)) Int u^2 dmu  >=  0 (up to roundoff).
double log_uncertainty_gap(const CoefficientVector& u);

// phi(sigma) = sum m_n(sigma) a_n^2 - Q(sigma) Int u^2 (1-x^2)^(-sigma/2) dmu.
// Defined for raw sigma in (-1, 2*lambda+1) with no regime validation;
// phi(0) = 0 and the one-sided derivative at 0 equals log_uncertainty_gap.
double phi(double sigma, const CoefficientVector& u);

struct SharpnessProbe {
  std::vector<double> ratios;  // one per epsilon, in input order
  double extrapolated;         // Aitken limit of the ratio sequence
  double Q;                    // constant the ratios approach from above
};

// Rayleigh-type ratios of the trial family u_eps = (1-x^2)^(eps) * g with
// exact closed-form coefficients, truncated at degree N.
SharpnessProbe sharpness_probe(const FracParams& p,
                               const std::vector<double>& eps_sequence,
                               int N);

}  // namespace ultrahardy
