#pragma once

// Gauss quadrature for the weights (1-x^2)^(nu-1/2) on (-1,1), plus panel
// integrators for integrands with endpoint or diagonal singularities.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ultrahardy/specfun.hpp"

namespace ultrahardy {

struct QuadratureRule {
  double lambda = 0.0;  // measure parameter: weight is (1-x^2)^(lambda-1/2)
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Raised when an adaptive scheme runs out of refinement depth; carries the
// deepest estimate computed so far.
class ToleranceNotMet : public std::runtime_error {
 public:
  ToleranceNotMet(const std::string& what, double best)
      : std::runtime_error(what), best_(best) {}
  double best_estimate() const { return best_; }

 private:
  double best_;
};

// n-point Gauss rule for dmu_lambda.  Nodes symmetric about 0, weights
// positive, exact through polynomial degree 2n-1.
QuadratureRule gauss_gegenbauer(int n, const BasisParams& p);

// Same generator over the full admissible measure range nu > -1/2 (the
// kernel quadratures need parameters below the BasisParams floor).
QuadratureRule gauss_measure(int n, double nu);

// Sum of w_i f(x_i); rejects non-finite integrand values.
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

// integral of f_smooth(x) (1-x^2)^extra_exponent dmu_lambda, with the extra
// power absorbed into a shifted Gauss weight.  Throws std::domain_error when
// lambda - 1/2 + extra_exponent <= -1 (divergent), ToleranceNotMet when node
// doubling stalls before reaching tol.
double integrate_endpoint_singular(const std::function<double(double)>& f_smooth,
                                   double extra_exponent, const BasisParams& p,
                                   double tol = 1e-12);

// integral over [a,b] of f, by Gauss-Legendre panels graded dyadically
// toward each endpoint (levels_lo toward a, levels_hi toward b).  Handles
// integrable endpoint singularities; the innermost slivers are dropped.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        int levels_lo, int levels_hi, int points);

struct Offdiag2dOptions {
  int base_depth = 6;    // dyadic band levels present before the ladder starts
  int max_depth = 12;    // additional ladder levels toward the diagonal
  int edge_levels = 30;  // dyadic levels toward x = +-1
  int panel_points = 10;
};

// Nodes for a double integral against dmu_nu x dmu_nu whose integrand may
// blow up on the diagonal x = y.  Outer nodes cover (-1,1) with endpoint
// grading; each outer node carries an inner set graded toward both endpoints
// and toward the diagonal.  Inner nodes are tagged with the ladder level at
// which they activate (0 = base grid).
struct OffdiagGrid {
  std::vector<double> x, wx;
  std::vector<double> y, wy;
  std::vector<int> ylevel;
  std::vector<std::size_t> offset;  // x.size()+1 entries into y/wy/ylevel
  int max_level = 0;
};

OffdiagGrid make_offdiag_grid(double nu, const Offdiag2dOptions& opt = {});

// Double integral of F(x,y) dmu_nu(x) dmu_nu(y) on the grid above, refining
// the diagonal band one dyadic level at a time until successive ladder sums
// agree to tol (relative); exhausting max_depth raises ToleranceNotMet with
// the best estimate.
double integrate_2d_offdiagonal(const std::function<double(double, double)>& F,
                                const BasisParams& p, double tol = 1e-8,
                                const Offdiag2dOptions& opt = {});

}  // namespace ultrahardy
