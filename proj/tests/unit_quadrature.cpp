#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "ultrahardy/quadrature.hpp"

using namespace ultrahardy;

TEST_CASE("gauss rules: symmetry, positivity, total mass") {
  for (double lam : {0.5, 1.0, 2.7}) {
    for (int n : {4, 8, 16, 32}) {
      auto rule = gauss_gegenbauer(n, BasisParams(lam));
      REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
      double mass = 0.0;
      for (int i = 0; i < n; ++i) {
        CHECK(rule.nodes[i] > -1.0);
        CHECK(rule.nodes[i] < 1.0);
        CHECK(rule.weights[i] > 0.0);
        CHECK(std::abs(rule.nodes[i] + rule.nodes[n - 1 - i]) <= 1e-14);
        mass += rule.weights[i];
      }
      CHECK(std::abs(mass / measure_mass(lam) - 1.0) <= 1e-13);
    }
  }
  CHECK_THROWS_AS(gauss_measure(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(gauss_measure(5, -0.6), std::domain_error);
}

TEST_CASE("gauss rules integrate monomials exactly through degree 2n-1") {
  for (double nu : {-0.3, 0.1, 0.75, 1.0, 2.0}) {
    for (int n : {4, 8, 16, 32}) {
      auto rule = gauss_measure(n, nu);
      for (int k = 0; 2 * k <= 2 * n - 1; ++k) {
        double got = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
          got += rule.weights[i] * std::pow(rule.nodes[i], 2.0 * k);
        const double want = oracle::even_power_moment(k, nu);
        CHECK(std::abs(got / want - 1.0) <= 1e-12);
      }
      // odd moments vanish by symmetry
      double odd = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        odd += rule.weights[i] * std::pow(rule.nodes[i], 3.0);
      CHECK(std::abs(odd) <= 1e-14);
    }
  }
}

TEST_CASE("integrate rejects non-finite samples") {
  auto rule = gauss_gegenbauer(8, BasisParams(1.0));
  CHECK_THROWS_AS(
      integrate(rule, [](double x) { return x > 0 ? 1.0 / 0.0 : 1.0; }),
      std::domain_error);
  const double got = integrate(rule, [](double x) { return std::cos(x); });
  CHECK(std::isfinite(got));
}

TEST_CASE("integrate_endpoint_singular absorbs the extra power") {
  // f = 1, extra exponent -0.3 at lambda = 1: the product weight is the
  // nu = 0.7 measure.
  BasisParams p(1.0);
  const double got =
      integrate_endpoint_singular([](double) { return 1.0; }, -0.3, p, 1e-12);
  CHECK(std::abs(got / measure_mass(0.7) - 1.0) <= 1e-12);

  // smooth integrand, no extra power: plain Gauss agreement
  auto rule = gauss_gegenbauer(60, p);
  const double want = integrate(rule, [](double x) { return std::cos(x); });
  const double got2 =
      integrate_endpoint_singular([](double x) { return std::cos(x); }, 0.0,
                                  p, 1e-12);
  CHECK(std::abs(got2 / want - 1.0) <= 1e-11);

  // strongly singular but integrable extra power
  const double got3 = integrate_endpoint_singular([](double) { return 1.0; },
                                                  -1.2, p, 1e-12);
  CHECK(std::abs(got3 / measure_mass(-0.2) - 1.0) <= 1e-11);

  // divergent: lambda - 1/2 + extra <= -1
  CHECK_THROWS_AS(integrate_endpoint_singular([](double) { return 1.0; },
                                              -1.6, p, 1e-10),
                  std::domain_error);
}

TEST_CASE("integrate_graded handles endpoint singularities") {
  const double a = integrate_graded(
      [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 48, 48, 12);
  CHECK(std::abs(a - 2.0) <= 1e-12);
  const double b = integrate_graded([](double x) { return std::log(x); }, 0.0,
                                    1.0, 48, 48, 12);
  CHECK(std::abs(b + 1.0) <= 1e-12);
  const double c = integrate_graded([](double x) { return x * x; }, -1.0, 2.0,
                                    48, 48, 10);
  CHECK(std::abs(c - 3.0) <= 1e-12);
  CHECK_THROWS_AS(integrate_graded([](double) { return 1.0; }, 1.0, 0.0, 2, 2,
                                   8),
                  std::invalid_argument);
}

TEST_CASE("2-d off-diagonal quadrature on difference-squared integrands") {
  BasisParams p(1.0);
  const double mass = measure_mass(1.0);
  CHECK(integrate_2d_offdiagonal([](double, double) { return 0.0; }, p,
                                 1e-8) == 0.0);

  // (x-y)^2 splits into moments: 2 m0 m2 (odd moments vanish)
  const double m2 = oracle::even_power_moment(1, 1.0);
  const double got2 = integrate_2d_offdiagonal(
      [](double x, double y) { return (x - y) * (x - y); }, p, 1e-8);
  CHECK(std::abs(got2 / (2.0 * mass * m2) - 1.0) <= 1e-8);

  // transposing the integrand moves the result by no more than tol
  const double ga = integrate_2d_offdiagonal(
      [](double x, double y) { return (x - y) * (x - y) * (1.0 + 0.5 * x); },
      p, 1e-8);
  const double gb = integrate_2d_offdiagonal(
      [](double x, double y) { return (x - y) * (x - y) * (1.0 + 0.5 * y); },
      p, 1e-8);
  CHECK(std::abs(ga / gb - 1.0) <= 1e-8);
}

TEST_CASE("2-d off-diagonal quadrature on a vanishing diagonal singularity") {
  // the admissible class: blows up no worse than |x-y|^(-1-sigma) times the
  // (x-y)^2 of a difference square, so here |x-y|^(1/2)
  BasisParams p(1.0);
  auto F = [](double x, double y) { return std::sqrt(std::abs(x - y)); };

  // independent route: inner integral graded toward the diagonal, outer Gauss
  auto outer = gauss_gegenbauer(80, p);
  double ref = 0.0;
  for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
    const double x = outer.nodes[i];
    auto fy = [&](double y) {
      return std::sqrt(std::abs(x - y)) * std::sqrt(1.0 - y * y);
    };
    double inner = 0.0;
    if (x > -1.0) inner += integrate_graded(fy, -1.0, x, 30, 30, 12);
    if (x < 1.0) inner += integrate_graded(fy, x, 1.0, 30, 30, 12);
    ref += outer.weights[i] * inner;
  }

  const double got = integrate_2d_offdiagonal(F, p, 1e-8);
  CHECK(std::abs(got / ref - 1.0) <= 1e-7);

  // starving the ladder raises, and the exception carries a usable estimate
  Offdiag2dOptions starved;
  starved.max_depth = 1;
  try {
    integrate_2d_offdiagonal(F, p, 1e-12, starved);
    CHECK(false);
  } catch (const ToleranceNotMet& e) {
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(std::abs(e.best_estimate() / ref - 1.0) <= 0.05);
  }
}

TEST_CASE("2-d off-diagonal quadrature reports flat integrands honestly") {
  // F = 1 sits outside the admissible class: nothing decays toward the
  // diagonal, so the ladder exhausts its depth; the carried estimate is
  // still the mass squared to a few parts in a thousand.
  BasisParams p(1.0);
  const double mass2 = measure_mass(1.0) * measure_mass(1.0);
  try {
    integrate_2d_offdiagonal([](double, double) { return 1.0; }, p, 1e-8);
    CHECK(false);
  } catch (const ToleranceNotMet& e) {
    CHECK(std::abs(e.best_estimate() / mass2 - 1.0) <= 1e-3);
  }
}

TEST_CASE("offdiag grid tags levels and stays inside the square") {
  auto grid = make_offdiag_grid(0.5);
  REQUIRE(grid.offset.size() == grid.x.size() + 1);
  CHECK(grid.max_level > 0);
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    CHECK(std::abs(grid.x[i]) < 1.0);
    for (std::size_t j = grid.offset[i]; j < grid.offset[i + 1]; ++j) {
      CHECK(std::abs(grid.y[j]) < 1.0);
      CHECK(grid.ylevel[j] >= 0);
      CHECK(grid.ylevel[j] <= grid.max_level);
    }
  }
  CHECK_THROWS_AS(make_offdiag_grid(-0.7), std::domain_error);
}
