#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "ultrahardy/transform.hpp"

using namespace ultrahardy;

TEST_CASE("analyze/synthesize round-trips polynomials exactly") {
  BasisParams p(1.2);
  auto rule = gauss_gegenbauer(40, p);
  auto f = [](double x) { return (2.0 * x - 1.0) * (x * x + 0.25 * x - 0.3); };
  auto c = analyze(f, p, 12, rule);
  REQUIRE(c.coeffs.size() == 13);
  CHECK(c.lambda == p.lambda);
  for (int n = 4; n <= 12; ++n) CHECK(std::abs(c.coeffs[n]) <= 1e-13);
  for (double x : {-0.93, -0.4, 0.0, 0.17, 0.76, 1.0})
    CHECK(std::abs(synthesize(c, x) - f(x)) <= 1e-13);
}

TEST_CASE("analyze picks out a single basis element") {
  BasisParams p(0.8);
  auto rule = gauss_gegenbauer(32, p);
  auto c = analyze([&](double x) { return normalized_gegenbauer(5, p, x); },
                   p, 10, rule);
  for (int n = 0; n <= 10; ++n)
    CHECK(std::abs(c.coeffs[n] - (n == 5 ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("analyze validates inputs") {
  BasisParams p(1.0);
  auto rule = gauss_gegenbauer(16, p);
  CHECK_THROWS_AS(analyze([](double) { return 1.0; }, p, -1, rule),
                  std::invalid_argument);
  auto wrong = gauss_gegenbauer(16, BasisParams(2.0));
  CHECK_THROWS_AS(analyze([](double) { return 1.0; }, p, 4, wrong),
                  std::invalid_argument);
  CHECK_THROWS_AS(analyze([&](double x) { return 1.0 / (x - rule.nodes[3]); },
                          p, 4, rule),
                  std::domain_error);
  CoefficientVector c{1.0, {1.0, 0.5}};
  CHECK_THROWS_AS(synthesize(c, 1.5), std::domain_error);
}

TEST_CASE("parseval_gap is tiny on polynomials") {
  std::mt19937 gen(11);
  BasisParams p(1.0);
  auto rule = gauss_gegenbauer(64, p);
  for (int trial = 0; trial < 5; ++trial) {
    auto c = oracle::random_poly(gen, p.lambda, 10);
    auto f = [&](double x) { return synthesize(c, x); };
    auto back = analyze(f, p, 10, rule);
    CHECK(parseval_gap(f, back, rule) <= 1e-10);
  }
}

TEST_CASE("sobolev_norm weights coefficients by (n+lambda)^s") {
  CoefficientVector c{1.5, {2.0, 0.0, -1.0}};
  const double s = 0.8;
  const double want = std::sqrt(4.0 * std::pow(1.5, s) + std::pow(3.5, s));
  CHECK(std::abs(sobolev_norm(c, s) / want - 1.0) <= 1e-14);
  CHECK(sobolev_norm(CoefficientVector{1.0, {}}, 1.0) == 0.0);
}

TEST_CASE("coefficient vector JSON round-trip is byte-stable") {
  CoefficientVector c{0.75, {1.0, -0.125, 3.5e-14, 0.0}};
  const std::string s1 = to_json(c);
  auto back = coefficient_vector_from_json(s1);
  CHECK(back.lambda == c.lambda);
  REQUIRE(back.coeffs.size() == c.coeffs.size());
  for (std::size_t i = 0; i < c.coeffs.size(); ++i)
    CHECK(back.coeffs[i] == c.coeffs[i]);
  CHECK(to_json(back) == s1);
}

TEST_CASE("coefficient vector JSON rejects malformed input") {
  CHECK_THROWS_AS(coefficient_vector_from_json("not json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(coefficient_vector_from_json("{\"coeffs\": [1.0]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(coefficient_vector_from_json("{\"lambda\": 1.0}"),
                  std::invalid_argument);
}
