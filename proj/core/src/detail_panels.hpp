#pragma once

// Internal panel builders shared between the quadrature and operator code.
// Not installed; include only from core sources.

#include <vector>

#include "ultrahardy/quadrature.hpp"

namespace ultrahardy::detail {

// p-point Gauss-Legendre rule on [0,1], cached per p.
const QuadratureRule& unit_legendre(int p);

// Appends nodes for the segment running from `from` to the endpoint e = +-1,
// integrating against (1-y^2)^(nu-1/2) dy.  A power substitution makes the
// transformed integrand vanish linearly at the endpoint; panels are graded
// dyadically toward it.  Level tags are all 0.
void edge_segment(double nu, double from, double e, int levels, int p,
                  std::vector<double>& ys, std::vector<double>& ws,
                  std::vector<int>& lv);

// Appends nodes for the segment from x0 toward the interior point m, graded
// dyadically toward x0; the measure weight enters as a smooth factor.
// Panels deeper than base_depth carry ladder levels 1, 2, ...
void diag_segment(double nu, double x0, double m, int base_depth, int max_level,
                  int p, std::vector<double>& ys, std::vector<double>& ws,
                  std::vector<int>& lv);

}  // namespace ultrahardy::detail
