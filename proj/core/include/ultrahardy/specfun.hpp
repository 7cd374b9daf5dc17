#pragma once

// Special-function primitives: log-Gamma, Gamma ratios, digamma, and the
// ultraspherical (Gegenbauer) family C_n^lambda together with the L^2 norms
// that make it orthonormal under dmu_lambda = (1-x^2)^(lambda-1/2) dx.

namespace ultrahardy {

// Parameter of the weight (1-x^2)^(lambda-1/2) on (-1,1).  Must be > 0.
struct BasisParams {
  explicit BasisParams(double lambda_);
  double lambda;
};

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// ln(Gamma(a)/Gamma(b)) for a, b > 0, computed without forming either value.
double log_gamma_ratio(double a, double b);

// Gamma(a)/Gamma(b) for a, b > 0.  Safe where the ratio itself is
// representable, even when both Gamma values would overflow.
double gamma_ratio(double a, double b);

// Digamma (psi) for x > 0.
double digamma(double x);

// 1/Gamma(x) for any real x; exactly 0 at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

// log|Gamma(x)| plus the sign of Gamma(x); sign = 0 marks a pole.
struct SignedLogGamma {
  double log_abs;
  int sign;
};
SignedLogGamma signed_log_gamma(double x);

// c_lambda = Gamma(2 lambda + 1) / (2^(2 lambda) Gamma(lambda + 1/2)^2).
double c_lambda(double lambda);

// Total mass of (1-x^2)^(nu-1/2) dx over (-1,1); defined for nu > -1/2.
double measure_mass(double nu);

// C_n^lambda(x) by the forward three-term recurrence.  Requires lambda > 0
// and -1 <= x <= 1.
double gegenbauer(int n, double lambda, double x);

// d_n^2 = integral of (C_n^lambda)^2 dmu_lambda,
// evaluated as lambda * C_n^lambda(1) / (c_lambda (n + lambda)) with
// C_n^lambda(1) as a Gamma ratio.
double norm_sq(int n, const BasisParams& p);

// c_n^lambda(x) = C_n^lambda(x) / d_n.
double normalized_gegenbauer(int n, const BasisParams& p, double x);

// Fills out[0..nmax] with the orthonormal family for the measure
// (1-x^2)^(nu-1/2) dx via the coupled recurrence; valid for nu > -1/2,
// which is wider than BasisParams allows (quadrature internals need it).
void normalized_gegenbauer_all(int nmax, double nu, double x, double* out);

}  // namespace ultrahardy
