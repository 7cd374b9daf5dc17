#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "ultrahardy/inequality_lab.hpp"

using namespace ultrahardy;

namespace {
double rel(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got / want - 1.0);
}
}  // namespace

TEST_CASE("hardy_constant over the frozen parameter grid") {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      FracParams p(BasisParams(oracle::kLambdaGrid[j]), oracle::kSigmaGrid[i]);
      CHECK(rel(hardy_constant(p), oracle::kQGrid[i][j]) <= 1e-14);
    }
  }
}

TEST_CASE("beta_moment: frozen references and exact zeros") {
  for (const auto& r : oracle::kBetaRefs) {
    const double got = beta_moment(r.m, r.beta, BasisParams(r.lambda));
    if (r.val == 0.0)
      CHECK(got == 0.0);  // a Pochhammer factor vanishes identically
    else
      CHECK(rel(got, r.val) <= 1e-12);
  }
  CHECK_THROWS_AS(beta_moment(-1, 1.0, BasisParams(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(beta_moment(2, 0.0, BasisParams(1.0)), std::domain_error);
  CHECK_THROWS_AS(beta_moment(2, -0.7, BasisParams(1.0)), std::domain_error);
}

TEST_CASE("beta_moment against the libm closed form") {
  for (double lam : {0.4, 0.75, 1.0, 1.9}) {
    for (double beta : {0.35, 0.8, 1.6, 3.1}) {
      for (int m = 0; m <= 6; ++m) {
        const double want = oracle::beta_moment_ref(m, beta, lam);
        const double got = beta_moment(m, beta, BasisParams(lam));
        CHECK(std::abs(got - want) <= 1e-11 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("beta_moment against direct quadrature") {
  for (const auto& r : oracle::kBetaRefs) {
    if (r.val == 0.0) continue;
    BasisParams b(r.lambda);
    const double direct = integrate_endpoint_singular(
        [&](double x) { return gegenbauer(2 * r.m, r.lambda, x); },
        r.beta - r.lambda - 0.5, b, 1e-13);
    CHECK(rel(beta_moment(r.m, r.beta, b), direct) <= 1e-10);
  }
}

TEST_CASE("beta_moment at m = 0 is the Beta-function mass") {
  for (double beta : {0.25, 1.0, 2.4}) {
    const double want = std::sqrt(std::numbers::pi) *
                        std::exp(std::lgamma(beta) - std::lgamma(beta + 0.5));
    CHECK(rel(beta_moment(0, beta, BasisParams(1.3)), want) <= 1e-13);
  }
}

TEST_CASE("moment-ratio identity holds in both regimes") {
  FracParams pk(BasisParams(1.0), 0.5);
  FracParams pe(BasisParams(2.0), 2.5, FracRegime::extended);
  for (int m = 0; m <= 10; ++m) {
    auto [l1, r1] = power_weight_ratio_check(m, pk);
    CHECK(rel(l1, r1) <= 1e-10);
    auto [l2, r2] = power_weight_ratio_check(m, pe);
    CHECK(rel(l2, r2) <= 1e-10);
  }
}

TEST_CASE("power weight map: exact on coefficients, slow pointwise") {
  FracParams p(BasisParams(1.0), 0.5);
  auto chk128 = power_weight_operator_check(p, 128, 40, 19);
  CHECK(chk128.max_coeff_rel_err <= 1e-10);

  // The image (1-x^2)^(-alpha-sigma/2) fails to be square-integrable under
  // the measure, so the synthesized truncation converges only conditionally,
  // at rate N^(-(1-sigma)/2) at interior points.  The honest check is the
  // decay ratio between truncation levels, not a small absolute error.
  auto chk2048 = power_weight_operator_check(p, 2048, 40, 19);
  CHECK(chk128.max_pointwise_rel_err > 0.05);
  CHECK(chk2048.max_pointwise_rel_err < chk128.max_pointwise_rel_err);
  const double decay =
      chk2048.max_pointwise_rel_err / chk128.max_pointwise_rel_err;
  // 16x more terms at sigma = 1/2: expect about 16^(-1/4) ~ 0.5
  CHECK(decay > 0.3);
  CHECK(decay < 0.7);
  CHECK_THROWS_AS(power_weight_operator_check(p, -1, 10, 5),
                  std::invalid_argument);
}

TEST_CASE("hardy_check passes on random polynomials") {
  const double cells[][2] = {{1.0, 0.5}, {0.75, 0.25}, {2.0, 0.75}};
  for (const auto& cell : cells) {
    FracParams p(BasisParams(cell[0]), cell[1]);
    std::mt19937 gen(42);
    for (int trial = 0; trial < 20; ++trial) {
      auto u = oracle::random_poly(gen, cell[0], 8);
      auto rep = hardy_check(u, p);
      CHECK(rep.pass);
      CHECK(rep.deficit >= -rep.deficit_rel_tol * rep.rhs);
      CHECK(rep.lhs > 0.0);
      CHECK(rep.rhs > 0.0);
      CHECK(rel(rep.deficit, rep.rhs - rep.lhs) <= 1e-12);
      CHECK(rep.lambda == cell[0]);
      CHECK(rep.sigma == cell[1]);
      CHECK(rep.N == 8);
    }
  }
  FracParams p(BasisParams(1.0), 0.5);
  CoefficientVector wrong{2.0, {1.0, 0.5}};
  CHECK_THROWS_AS(hardy_check(wrong, p), std::invalid_argument);
}

TEST_CASE("hardy_check function overload agrees with the spectral one") {
  FracParams p(BasisParams(1.0), 0.5);
  std::mt19937 gen(7);
  auto u = oracle::random_poly(gen, 1.0, 6);
  auto rule = gauss_gegenbauer(64, p.basis);
  auto viaf = hardy_check([&](double x) { return synthesize(u, x); }, p, 6,
                          rule);
  auto viac = hardy_check(u, p);
  CHECK(rel(viaf.lhs, viac.lhs) <= 1e-10);
  CHECK(rel(viaf.rhs, viac.rhs) <= 1e-10);
}

TEST_CASE("hardy_lhs overloads agree") {
  FracParams p(BasisParams(0.75), 0.4);
  std::mt19937 gen(3);
  auto u = oracle::random_poly(gen, 0.75, 5);
  const double a = hardy_lhs(u, p);
  const double b = hardy_lhs([&](double x) { return synthesize(u, x); }, p);
  CHECK(rel(a, b) <= 1e-10);
  CHECK(a > 0.0);
}

TEST_CASE("ground-state representation matches the spectral deficit") {
  FracParams p(BasisParams(1.0), 0.5);
  auto inner = gauss_measure(80, 0.5);
  KernelForm form(p, inner);
  std::mt19937 gen(19);
  for (int trial = 0; trial < 2; ++trial) {
    auto u = oracle::random_poly(gen, 1.0, 3);
    auto rep = hardy_check(u, p);
    const double gsr =
        ground_state_deficit([&](double x) { return synthesize(u, x); }, form);
    CHECK(std::abs(gsr - rep.deficit) <= 1e-6 * rep.rhs);
  }
}

TEST_CASE("heisenberg slack is nonnegative on random polynomials") {
  for (double lam : {0.75, 1.0, 2.0}) {
    FracParams p(BasisParams(lam), 0.5);
    std::mt19937 gen(1234);
    double min_slack = 1e300;
    for (int trial = 0; trial < 50; ++trial) {
      auto u = oracle::random_poly(gen, lam, 8);
      min_slack = std::min(min_slack, heisenberg_check(u, p));
    }
    CHECK(min_slack > 0.0);
  }
  FracParams p(BasisParams(1.0), 0.5);
  CoefficientVector wrong{3.0, {1.0}};
  CHECK_THROWS_AS(heisenberg_check(wrong, p), std::invalid_argument);
}

TEST_CASE("log uncertainty gap: nonnegative and equal to the derivative") {
  std::mt19937 gen(77);
  for (double lam : {0.75, 1.0, 2.0}) {
    for (int trial = 0; trial < 4; ++trial) {
      auto u = oracle::random_poly(gen, lam, 8);
      double mass = 0.0;
      for (double a : u.coeffs) mass += a * a;
      const double gap = log_uncertainty_gap(u);
      CHECK(gap >= -1e-8 * mass);
      const double h = 1e-4;
      const double fd = (phi(h, u) - phi(-h, u)) / (2.0 * h);
      CHECK(std::abs(gap - fd) <= 1e-5 * std::max(1.0, std::abs(gap)));
    }
  }
}

TEST_CASE("phi vanishes at zero and is positive on the sigma window") {
  std::mt19937 gen(5);
  for (double lam : {0.75, 1.0}) {
    auto u = oracle::random_poly(gen, lam, 7);
    double mass = 0.0;
    for (double a : u.coeffs) mass += a * a;
    CHECK(std::abs(phi(0.0, u)) <= 1e-10 * mass);
    for (double sig : {0.3, 0.9, 1.4}) CHECK(phi(sig, u) > 0.0);
  }
}

TEST_CASE("sharpness probe drives the ratio down to the constant") {
  FracParams p(BasisParams(1.0), 0.5);
  std::vector<double> eps(std::begin(oracle::kSharpEps),
                          std::end(oracle::kSharpEps));
  auto probe = sharpness_probe(p, eps, 256);
  REQUIRE(probe.ratios.size() == eps.size());
  CHECK(rel(probe.Q, oracle::kQGrid[1][1]) <= 1e-14);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    CHECK(rel(probe.ratios[i], oracle::kSharpRatios[i]) <= 1e-5);
    CHECK(probe.ratios[i] > probe.Q);
    if (i > 0) CHECK(probe.ratios[i] < probe.ratios[i - 1]);
  }
  CHECK(std::abs(probe.extrapolated / probe.Q - 1.0) <= 0.01);
  CHECK_THROWS_AS((sharpness_probe(p, {0.25, -0.1}, 64)), std::domain_error);
  CHECK_THROWS_AS(sharpness_probe(p, eps, -3), std::invalid_argument);
}

TEST_CASE("hardy report JSON round-trip and defaults") {
  HardyReport r;
  r.lambda = 1.0;
  r.sigma = 0.5;
  r.N = 12;
  r.lhs = 1.25;
  r.rhs = 2.5;
  r.deficit = 1.25;
  r.has_gsr = true;
  r.gsr_value = 1.2500001;
  r.pass = true;
  const std::string s1 = to_json(r);
  auto back = hardy_report_from_json(s1);
  CHECK(to_json(back) == s1);
  CHECK(back.N == 12);
  CHECK(back.has_gsr);
  CHECK(back.gsr_value == r.gsr_value);

  // minimal document: deficit defaults to rhs - lhs, flags to their resets
  auto m = hardy_report_from_json(
      "{\"lambda\": 1.0, \"sigma\": 0.5, \"lhs\": 1.0, \"rhs\": 3.0}");
  CHECK(m.deficit == 2.0);
  CHECK(!m.has_gsr);
  CHECK(m.deficit_rel_tol == HardyReport{}.deficit_rel_tol);

  CHECK_THROWS_AS(hardy_report_from_json("nope"), std::invalid_argument);
  CHECK_THROWS_AS(hardy_report_from_json("{\"lambda\": 1.0}"),
                  std::invalid_argument);
}
