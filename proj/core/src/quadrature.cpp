#include "ultrahardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "detail_panels.hpp"

namespace ultrahardy {

namespace {

// Symmetric-tridiagonal eigenvalues, QL with implicit shifts.  d is the
// diagonal, e the subdiagonal (e[n-1] used as scratch).  Eigenvalues land in
// d, sorted ascending.
void tridiag_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  e.resize(n, 0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    for (;;) {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (iter++ == 60) throw std::runtime_error("tridiag_eigenvalues: no convergence");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
}

// Monic-recurrence coefficient b_k for the weight (1-x^2)^(nu-1/2).
double monic_b(int k, double nu) {
  if (k == 1) return 1.0 / (2.0 * nu + 2.0);
  return k * (k + 2.0 * nu - 1.0) / (4.0 * (k + nu) * (k + nu - 1.0));
}

// Orthonormal polynomial p_N and its derivative at x (no domain checks; the
// Newton polish may step slightly outside [-1,1]).
void ortho_eval(int N, double nu, double mu0, double x, double* val, double* der) {
  double p0 = 1.0 / std::sqrt(mu0), d0 = 0.0;
  if (N == 0) {
    *val = p0;
    *der = 0.0;
    return;
  }
  double sb = std::sqrt(monic_b(1, nu));
  double p1 = x * p0 / sb, d1 = p0 / sb;
  for (int k = 1; k < N; ++k) {
    const double sb1 = std::sqrt(monic_b(k + 1, nu));
    const double p2 = (x * p1 - sb * p0) / sb1;
    const double d2 = (p1 + x * d1 - sb * d0) / sb1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
    sb = sb1;
  }
  *val = p1;
  *der = d1;
}

struct PanelSums {
  double total = 0.0;
  double last = 0.0;    // panel closest to the graded endpoint
  double second = 0.0;  // next one out
};

// Geometric tail for the dropped sliver beyond the innermost panel.
double sliver_tail(const PanelSums& s) {
  if (s.last == 0.0 || s.second == 0.0) return 0.0;
  double r = s.last / s.second;
  if (!(r > 0.0)) return 0.0;
  if (r > 0.97) r = 0.97;
  return s.last * r / (1.0 - r);
}

}  // namespace

namespace detail {

namespace {
std::mutex g_rule_cache_mutex;
std::map<int, QuadratureRule> g_legendre_cache;
}  // namespace

const QuadratureRule& unit_legendre(int p) {
  std::lock_guard<std::mutex> lock(g_rule_cache_mutex);
  auto it = g_legendre_cache.find(p);
  if (it != g_legendre_cache.end()) return it->second;
  QuadratureRule r = gauss_measure(p, 0.5);  // weight (1-x^2)^0
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    r.nodes[i] = 0.5 * (r.nodes[i] + 1.0);
    r.weights[i] *= 0.5;
  }
  return g_legendre_cache.emplace(p, std::move(r)).first->second;
}

}  // namespace detail

QuadratureRule gauss_measure(int n, double nu) {
  if (n < 1) throw std::invalid_argument("gauss_measure: need at least one node");
  if (!(nu > -0.5) || !std::isfinite(nu))
    throw std::domain_error("gauss_measure: need nu > -1/2");
  const double mu0 = measure_mass(nu);
  QuadratureRule rule;
  rule.lambda = nu;
  if (n == 1) {
    rule.nodes = {0.0};
    rule.weights = {mu0};
    return rule;
  }
  std::vector<double> d(n, 0.0), e(n, 0.0);
  for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(monic_b(k, nu));
  tridiag_eigenvalues(d, e);

  // two Newton corrections on the orthonormal recurrence sharpen the QL
  // eigenvalues to machine-precision roots
  for (int i = 0; i < n; ++i) {
    for (int it = 0; it < 2; ++it) {
      double v, dv;
      ortho_eval(n, nu, mu0, d[i], &v, &dv);
      if (dv != 0.0) {
        const double step = v / dv;
        if (std::abs(step) < 1e-3) d[i] -= step;
      }
    }
    if (d[i] > 1.0) d[i] = 1.0;
    if (d[i] < -1.0) d[i] = -1.0;
  }
  std::sort(d.begin(), d.end());

  // Christoffel weights: w_i = 1 / sum_{k<n} c_k(x_i)^2
  std::vector<double> c(n);
  rule.nodes = d;
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    normalized_gegenbauer_all(n - 1, nu, d[i], c.data());
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += c[k] * c[k];
    rule.weights[i] = 1.0 / s;
  }

  // enforce the symmetry of the even weight exactly
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[j] = t;
    rule.nodes[i] = -t;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_gegenbauer(int n, const BasisParams& p) {
  return gauss_measure(n, p.lambda);
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v))
      throw std::domain_error("integrate: integrand evaluated non-finite at a node");
    s += rule.weights[i] * v;
  }
  return s;
}

double integrate_endpoint_singular(const std::function<double(double)>& f_smooth,
                                   double extra_exponent, const BasisParams& p,
                                   double tol) {
  const double combined = p.lambda - 0.5 + extra_exponent;
  if (!(combined > -1.0))
    throw std::domain_error(
        "integrate_endpoint_singular: combined endpoint exponent <= -1, integral diverges");
  const double nu = p.lambda + extra_exponent;  // shifted measure parameter
  double prev = 0.0;
  bool have_prev = false;
  for (int n = 64; n <= 4096; n *= 2) {
    const QuadratureRule rule = gauss_measure(n, nu);
    const double cur = integrate(rule, f_smooth);
    if (have_prev) {
      const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
      if (std::abs(cur - prev) <= tol * scale) return cur;
    }
    prev = cur;
    have_prev = true;
  }
  throw ToleranceNotMet("integrate_endpoint_singular: node doubling stalled", prev);
}

double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        int levels_lo, int levels_hi, int points) {
  if (!(b > a)) throw std::invalid_argument("integrate_graded: need b > a");
  if (points < 2) throw std::invalid_argument("integrate_graded: need points >= 2");
  const QuadratureRule& gl = detail::unit_legendre(points);
  const double mid = 0.5 * (a + b);

  auto do_panel = [&](double lo, double hi) {
    double s = 0.0;
    const double w = hi - lo;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
      s += gl.weights[i] * w * f(lo + w * gl.nodes[i]);
    return s;
  };
  // one side: [end, mid] graded dyadically toward `end` (or mirrored)
  auto do_side = [&](double end, int levels) {
    const double w = mid - end;  // signed
    double total = 0.0;
    if (levels <= 0) {
      // no singularity declared: a few uniform panels
      for (int j = 0; j < 3; ++j) {
        double lo = end + w * j / 3.0, hi = end + w * (j + 1) / 3.0;
        total += (w > 0) ? do_panel(lo, hi) : do_panel(hi, lo);
      }
      return total;
    }
    PanelSums ps;
    for (int k = 0; k < levels; ++k) {
      const double u_hi = std::ldexp(1.0, -k);      // 2^-k
      const double u_lo = std::ldexp(1.0, -k - 1);  // 2^-(k+1)
      double s = 0.0;
      if (k == 0) {
        // split the outermost panel for interior resolution
        for (int j = 0; j < 3; ++j) {
          const double lo = u_lo + (u_hi - u_lo) * j / 3.0;
          const double hi = u_lo + (u_hi - u_lo) * (j + 1) / 3.0;
          s += (w > 0) ? do_panel(end + w * lo, end + w * hi)
                       : do_panel(end + w * hi, end + w * lo);
        }
      } else {
        s = (w > 0) ? do_panel(end + w * u_lo, end + w * u_hi)
                    : do_panel(end + w * u_hi, end + w * u_lo);
      }
      ps.total += s;
      ps.second = ps.last;
      ps.last = s;
    }
    return ps.total + sliver_tail(ps);
  };
  return do_side(a, levels_lo) + do_side(b, levels_hi);
}

namespace detail {

namespace {
// Appends p Gauss-Legendre nodes over [lo,hi] with an extra weight factor.
template <typename WeightFn>
void append_panel(double lo, double hi, int p, WeightFn&& wf, int level,
                  std::vector<double>& ys, std::vector<double>& ws,
                  std::vector<int>& lv) {
  const QuadratureRule& gl = unit_legendre(p);
  const double w = hi - lo;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double y = lo + w * gl.nodes[i];
    ys.push_back(y);
    ws.push_back(gl.weights[i] * w * wf(y));
    lv.push_back(level);
  }
}
}  // namespace

// Segment running from interior point `from` to the endpoint e = +-1,
// integrating against the measure weight (1-y^2)^(nu-1/2).  The substitution
// |e - y| = eta^q with q = 2/(nu+1/2) makes the transformed integrand vanish
// linearly at the endpoint; panels are graded dyadically toward it.
void edge_segment(double nu, double from, double e, int levels, int p,
                  std::vector<double>& ys, std::vector<double>& ws,
                  std::vector<int>& lv) {
  const double q = 2.0 / (nu + 0.5);
  const double R = std::abs(e - from);
  if (R <= 0.0) return;
  const double H = std::pow(R, 1.0 / q);
  const QuadratureRule& gl = unit_legendre(p);
  auto emit = [&](double elo, double ehi) {
    const double w = ehi - elo;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double eta = elo + w * gl.nodes[i];
      const double u = std::pow(eta, q);  // distance from the endpoint
      const double y = (e > 0) ? e - u : e + u;
      if (!(std::abs(y) < 1.0)) continue;  // collapsed onto the endpoint
      const double jac = q * std::pow(eta, q * (nu + 0.5) - 1.0);
      ys.push_back(y);
      ws.push_back(gl.weights[i] * w * jac * std::pow(2.0 - u, nu - 0.5));
      lv.push_back(0);
    }
  };
  for (int k = 0; k < levels; ++k) {
    const double ehi = H * std::ldexp(1.0, -k);
    const double elo = H * std::ldexp(1.0, -k - 1);
    if (k == 0) {
      for (int j = 0; j < 4; ++j)
        emit(elo + (ehi - elo) * j / 4.0, elo + (ehi - elo) * (j + 1) / 4.0);
    } else {
      emit(elo, ehi);
    }
  }
}

// Segment from x0 toward interior point m, graded dyadically toward x0 (the
// diagonal).  The measure weight is smooth here and enters as a factor.
// Panels deeper than base_depth carry increasing ladder levels.
void diag_segment(double nu, double x0, double m, int base_depth, int max_level,
                  int p, std::vector<double>& ys, std::vector<double>& ws,
                  std::vector<int>& lv) {
  const double w = m - x0;  // signed
  if (w == 0.0) return;
  auto weight = [&](double y) { return std::pow(1.0 - y * y, nu - 0.5); };
  const int total = base_depth + max_level;
  for (int k = 0; k < total; ++k) {
    const double hi = x0 + w * std::ldexp(1.0, -k);
    const double lo = x0 + w * std::ldexp(1.0, -k - 1);
    if (lo == x0 || hi == lo) break;  // below representable spacing at x0
    const int level = (k < base_depth) ? 0 : (k - base_depth + 1);
    if (w > 0)
      append_panel(lo, hi, p, weight, level, ys, ws, lv);
    else
      append_panel(hi, lo, p, weight, level, ys, ws, lv);
  }
}

}  // namespace detail

OffdiagGrid make_offdiag_grid(double nu, const Offdiag2dOptions& opt) {
  if (!(nu > -0.5)) throw std::domain_error("make_offdiag_grid: need nu > -1/2");
  OffdiagGrid g;
  g.max_level = opt.max_depth;

  // outer axis: both halves, graded toward the respective endpoint
  std::vector<int> dummy;
  detail::edge_segment(nu, 0.0, 1.0, opt.edge_levels, opt.panel_points, g.x, g.wx, dummy);
  detail::edge_segment(nu, 0.0, -1.0, opt.edge_levels, opt.panel_points, g.x, g.wx, dummy);

  g.offset.push_back(0);
  for (double x0 : g.x) {
    const double mr = 0.5 * (x0 + 1.0);
    const double ml = 0.5 * (x0 - 1.0);
    detail::diag_segment(nu, x0, mr, opt.base_depth, opt.max_depth, opt.panel_points,
                         g.y, g.wy, g.ylevel);
    detail::edge_segment(nu, mr, 1.0, opt.edge_levels, opt.panel_points, g.y, g.wy,
                         g.ylevel);
    detail::diag_segment(nu, x0, ml, opt.base_depth, opt.max_depth, opt.panel_points,
                         g.y, g.wy, g.ylevel);
    detail::edge_segment(nu, ml, -1.0, opt.edge_levels, opt.panel_points, g.y, g.wy,
                         g.ylevel);
    g.offset.push_back(g.y.size());
  }
  return g;
}

double integrate_2d_offdiagonal(const std::function<double(double, double)>& F,
                                const BasisParams& p, double tol,
                                const Offdiag2dOptions& opt) {
  const OffdiagGrid g = make_offdiag_grid(p.lambda, opt);

  // per-level partial sums of wx*wy*F over inner nodes activating at that level
  std::vector<double> level_sum(g.max_level + 1, 0.0);
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double x0 = g.x[i];
    const double wx = g.wx[i];
    for (std::size_t j = g.offset[i]; j < g.offset[i + 1]; ++j) {
      const double v = F(x0, g.y[j]);
      if (!std::isfinite(v))
        throw std::domain_error("integrate_2d_offdiagonal: integrand non-finite off the diagonal");
      level_sum[g.ylevel[j]] += wx * g.wy[j] * v;
    }
  }

  double cur = level_sum[0];
  double prev_diff = 0.0;
  for (int l = 1; l <= g.max_level; ++l) {
    const double next = cur + level_sum[l];
    const double diff = std::abs(next - cur);
    const double scale = std::max(std::abs(next), 1e-300);
    cur = next;
    if (diff <= tol * scale) return cur;
    prev_diff = diff;
  }
  // geometric estimate of the unresolved band
  double best = cur;
  if (prev_diff > 0.0 && g.max_level >= 2) {
    const double d1 = std::abs(level_sum[g.max_level]);
    const double d0 = std::abs(level_sum[g.max_level - 1]);
    if (d0 > 0.0 && d1 / d0 < 0.97) {
      const double r = d1 / d0;
      best += std::copysign(d1 * r / (1.0 - r), level_sum[g.max_level]);
      if (d1 * r / (1.0 - r) <= tol * std::max(std::abs(best), 1e-300)) return best;
    }
  }
  throw ToleranceNotMet("integrate_2d_offdiagonal: diagonal band did not converge", best);
}

}  // namespace ultrahardy
