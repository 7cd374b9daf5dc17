#pragma once

// Expansion of functions on (-1,1) in the orthonormal ultraspherical family
// c_n^lambda, and the Sobolev-type norms built on the coefficients.

#include <functional>
#include <string>
#include <vector>

#include "ultrahardy/quadrature.hpp"
#include "ultrahardy/specfun.hpp"

namespace ultrahardy {

struct CoefficientVector {
  double lambda = 0.0;
  std::vector<double> coeffs;  // coeffs[n] multiplies c_n^lambda
};

// a_n = sum_i w_i f(x_i) c_n^lambda(x_i) for n = 0..degree.  The rule must
// carry the same measure parameter as p.
CoefficientVector analyze(const std::function<double(double)>& f, const BasisParams& p,
                          int degree, const QuadratureRule& rule);

// sum_n a_n c_n^lambda(x); requires -1 <= x <= 1.
double synthesize(const CoefficientVector& c, double x);

// | integral of f^2 dmu_lambda  -  sum_n a_n^2 |
double parseval_gap(const std::function<double(double)>& f, const CoefficientVector& c,
                    const QuadratureRule& rule);

// sqrt( sum_n (n + lambda)^s a_n^2 )
double sobolev_norm(const CoefficientVector& c, double s);

// JSON round-trip: {"lambda": ..., "coeffs": [...]}
std::string to_json(const CoefficientVector& c);
CoefficientVector coefficient_vector_from_json(const std::string& text);

}  // namespace ultrahardy
