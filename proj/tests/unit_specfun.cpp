#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "support/oracles.hpp"
#include "ultrahardy/quadrature.hpp"
#include "ultrahardy/specfun.hpp"

using namespace ultrahardy;

namespace {
double rel(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got / want - 1.0);
}
}  // namespace

TEST_CASE("log_gamma agrees with libm across the positive axis") {
  for (double x : {1e-3, 0.1, 0.5, 1.0, 1.5, 2.0, 3.75, 10.0, 50.0, 171.5,
                   1234.5}) {
    CHECK(std::abs(log_gamma(x) - std::lgamma(x)) <=
          1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("log_gamma_ratio matches the lgamma difference") {
  // pairs kept where the libm difference itself is well conditioned
  const double pairs[][2] = {{0.7, 1.3}, {5.25, 2.0}, {2.0, 1e4},
                             {0.01, 40.0}, {300.5, 299.0}};
  for (const auto& ab : pairs) {
    const double want = std::lgamma(ab[0]) - std::lgamma(ab[1]);
    CHECK(std::abs(log_gamma_ratio(ab[0], ab[1]) - want) <=
          1e-12 * std::max(1.0, std::abs(want)) +
              1e-15 * (std::abs(std::lgamma(ab[0])) +
                       std::abs(std::lgamma(ab[1]))));
  }
  // Gamma(a+1)/Gamma(a) = a pins the accuracy where subtraction cannot
  for (double a : {0.3, 7.6, 120.25, 1e5})
    CHECK(std::abs(log_gamma_ratio(a + 1.0, a) - std::log(a)) <=
          1e-13 * std::max(1.0, std::abs(std::log(a))));
}

TEST_CASE("gamma_ratio survives where both factors overflow") {
  // Gamma(172) overflows a double; the ratio is modest.
  const double want = std::exp(std::lgamma(172.25) - std::lgamma(171.75));
  CHECK(rel(gamma_ratio(172.25, 171.75), want) <= 1e-12);
  CHECK(rel(gamma_ratio(5.0, 3.0), 12.0) <= 1e-14);  // 4!/2!
}

TEST_CASE("digamma matches frozen references and the recurrence") {
  for (int i = 0; i < 4; ++i)
    CHECK(rel(digamma(oracle::kDigammaArg[i]), oracle::kDigammaVal[i]) <=
          1e-13);
  for (double x : {0.2, 0.9, 3.3, 17.0})
    CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-13 *
          std::max(1.0, std::abs(digamma(x))));
}

TEST_CASE("reciprocal_gamma vanishes exactly at the poles") {
  for (double x : {0.0, -1.0, -2.0, -7.0}) CHECK(reciprocal_gamma(x) == 0.0);
  const double rootpi = std::sqrt(std::numbers::pi);
  CHECK(rel(reciprocal_gamma(0.5), 1.0 / rootpi) <= 1e-14);
  // Gamma(-1/2) = -2 sqrt(pi)
  CHECK(rel(reciprocal_gamma(-0.5), -1.0 / (2.0 * rootpi)) <= 1e-13);
  CHECK(rel(reciprocal_gamma(4.0), 1.0 / 6.0) <= 1e-14);
}

TEST_CASE("signed_log_gamma tracks sign through the reflection") {
  const double rootpi = std::sqrt(std::numbers::pi);
  auto a = signed_log_gamma(-0.5);  // negative value
  CHECK(a.sign == -1);
  CHECK(rel(std::exp(a.log_abs), 2.0 * rootpi) <= 1e-13);
  auto b = signed_log_gamma(-1.5);  // positive again
  CHECK(b.sign == 1);
  CHECK(rel(std::exp(b.log_abs), 4.0 * rootpi / 3.0) <= 1e-13);
  CHECK(signed_log_gamma(-3.0).sign == 0);
  auto c = signed_log_gamma(6.0);
  CHECK(c.sign == 1);
  CHECK(rel(std::exp(c.log_abs), 120.0) <= 1e-13);
}

TEST_CASE("c_lambda and measure_mass against closed forms") {
  CHECK(rel(c_lambda(1.0), oracle::kCLambda1) <= 1e-14);
  CHECK(rel(c_lambda(0.75), oracle::kCLambda075) <= 1e-14);
  for (double lam : {0.3, 0.6, 1.7, 4.25}) {
    const double want = std::exp(std::lgamma(2.0 * lam + 1.0) -
                                 2.0 * lam * std::numbers::ln2 -
                                 2.0 * std::lgamma(lam + 0.5));
    CHECK(rel(c_lambda(lam), want) <= 1e-13);
  }
  CHECK(rel(measure_mass(1.0), std::numbers::pi / 2.0) <= 1e-14);
  CHECK(rel(measure_mass(0.5), 2.0) <= 1e-14);
  CHECK(rel(measure_mass(0.0), std::numbers::pi) <= 1e-14);
  for (double nu : {-0.3, 0.2, 2.5}) {
    const double want = std::exp(std::lgamma(0.5) + std::lgamma(nu + 0.5) -
                                 std::lgamma(nu + 1.0));
    CHECK(rel(measure_mass(nu), want) <= 1e-13);
  }
  CHECK_THROWS_AS(measure_mass(-0.5), std::domain_error);
}

TEST_CASE("gegenbauer recurrence vs the explicit coefficient sum") {
  for (double lam : {0.35, 0.75, 1.0, 2.0, 3.5}) {
    for (int n = 0; n <= 14; ++n) {
      for (double x : {-0.97, -0.62, -0.11, 0.0, 0.3, 0.55, 0.9, 1.0}) {
        const double want = oracle::gegenbauer_sum(n, lam, x);
        const double scale = std::max(1.0, std::abs(want));
        CHECK(std::abs(gegenbauer(n, lam, x) - want) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("gegenbauer point values against frozen references") {
  for (const auto& r : oracle::kGegRefs)
    CHECK(rel(gegenbauer(r.n, r.lambda, r.x), r.val) <= 1e-12);
  CHECK(gegenbauer(0, 1.3, 0.4) == 1.0);
  CHECK(rel(gegenbauer(1, 1.3, 0.4), 2.0 * 1.3 * 0.4) <= 1e-15);
  CHECK_THROWS_AS(gegenbauer(3, 1.0, 1.2), std::domain_error);
  CHECK_THROWS_AS(gegenbauer(-1, 1.0, 0.2), std::domain_error);
  CHECK_THROWS_AS(BasisParams(0.0), std::domain_error);
}

TEST_CASE("norm_sq equals the quadrature of C_n^2 and the frozen value") {
  CHECK(rel(norm_sq(3, BasisParams(0.6)), oracle::kH3Lam06) <= 1e-13);
  for (double lam : {0.75, 1.0, 2.0}) {
    BasisParams p(lam);
    auto rule = gauss_gegenbauer(40, p);
    for (int n : {0, 1, 2, 5, 11}) {
      const double direct = integrate(rule, [&](double x) {
        const double c = gegenbauer(n, lam, x);
        return c * c;
      });
      CHECK(rel(norm_sq(n, p), direct) <= 1e-12);
    }
  }
  // lambda = 1: every norm is pi/2
  for (int n : {0, 4, 9})
    CHECK(rel(norm_sq(n, BasisParams(1.0)), std::numbers::pi / 2.0) <= 1e-13);
}

TEST_CASE("normalized family is orthonormal under its measure") {
  BasisParams p(1.4);
  auto rule = gauss_gegenbauer(48, p);
  for (int n = 0; n <= 8; ++n) {
    for (int m = n; m <= 8; ++m) {
      const double ip = integrate(rule, [&](double x) {
        return normalized_gegenbauer(n, p, x) * normalized_gegenbauer(m, p, x);
      });
      CHECK(std::abs(ip - (n == m ? 1.0 : 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("normalized_gegenbauer_all matches the one-at-a-time route") {
  BasisParams p(0.85);
  std::vector<double> buf(13);
  for (double x : {-0.77, 0.02, 0.48, 0.993}) {
    normalized_gegenbauer_all(12, p.lambda, x, buf.data());
    for (int n = 0; n <= 12; ++n)
      CHECK(std::abs(buf[n] - normalized_gegenbauer(n, p, x)) <=
            1e-11 * std::max(1.0, std::abs(buf[n])));
  }
}

TEST_CASE("normalized_gegenbauer_all is orthonormal below the basis floor") {
  // nu in (-1/2, 0]: outside BasisParams but inside the generator's range.
  const double nu = -0.2;
  auto rule = gauss_measure(40, nu);
  std::vector<double> row(7);
  std::vector<std::vector<double>> vals(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    vals[i].resize(7);
    normalized_gegenbauer_all(6, nu, rule.nodes[i], vals[i].data());
  }
  for (int n = 0; n <= 6; ++n) {
    for (int m = n; m <= 6; ++m) {
      double ip = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        ip += rule.weights[i] * vals[i][n] * vals[i][m];
      CHECK(std::abs(ip - (n == m ? 1.0 : 0.0)) <= 1e-11);
    }
  }
}
