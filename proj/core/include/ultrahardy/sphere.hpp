#pragma once

// The two-pole Hardy inequality on S^2. Fields are decomposed over circular
// harmonics; each (j,k) channel carries a radial profile G_{j,k} expanded in
// the lambda_j = j + 1/2 ultraspherical basis, on which the fractional
// operator acts one channel at a time.

#include <functional>
#include <string>
#include <vector>

#include "ultrahardy/inequality_lab.hpp"
#include "ultrahardy/transform.hpp"

namespace ultrahardy {

// Dimension of the space of degree-j spherical harmonics on S^(d-1):
// (2j + d - 2) Gamma(j + d - 2) / (Gamma(j + 1) Gamma(d - 1)), with the
// j = 0 value fixed at 1 directly.
int sphere_dim(int j, int d);

// (|x - e||x + e|)^sigma = 2^sigma (1 - t^2)^(sigma/2) for t = <x, e>.
double pole_weight(double t, double sigma);

struct SphereChannel {
  int j = 0;  // circular harmonic degree
  int k = 1;  // 1 = cosine branch, 2 = sine branch
  double lambda_j = 0.5;
  CoefficientVector coeffs;  // radial profile G_{j,k} in the lambda_j basis
};

struct SphereField {
  int d = 2;
  int max_j = 0;
  std::vector<SphereChannel> channels;
};

// Circular analysis on a uniform theta grid (trapezoid, exact for the
// trigonometric degrees present), then radial analysis of
// G_{j,k}(t) = (1 - t^2)^(-j/2) F_{j,k}(t) in the lambda_j basis.
// f is sampled as f(t, theta) with t in (-1,1), theta in [0, 2 pi).
SphereField decompose(const std::function<double(double, double)>& f,
                      int max_j, int max_n, int quad_nodes);

// Evaluate the field at (t, theta): sum of (1-t^2)^(j/2) G_{j,k}(t) Y_{j,k}.
double synthesize_sphere(const SphereField& field, double t, double theta);

// Apply the fractional operator channel-wise at lambda_j = j + 1/2.
SphereField apply_A_sigma_sphere(const SphereField& field, double sigma);

// Channel-sum Hardy check: lhs = Q_{sigma,1/2} sum_{j,k} of the weighted
// profile masses, rhs = sum_{j,k} of the per-channel quadratic forms. The
// report's lambda is the base parameter 1/2.
HardyReport sphere_hardy_check(const SphereField& field, double sigma);

// JSON: {"d": ..., "max_j": ..., "channels": [{"j", "k", "lambda_j",
// "coeffs": [...]}]}
std::string to_json(const SphereField& field);
SphereField sphere_field_from_json(const std::string& text);

}  // namespace ultrahardy
