#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ultrahardy/fracop.hpp"
#include "ultrahardy/inequality_lab.hpp"
#include "ultrahardy/quadrature.hpp"
#include "ultrahardy/specfun.hpp"
#include "ultrahardy/transform.hpp"

using namespace ultrahardy;

static void BM_GaussRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BasisParams p(1.0);
  for (auto _ : state) {
    auto rule = gauss_gegenbauer(n, p);
    benchmark::DoNotOptimize(rule.nodes.data());
  }
}
BENCHMARK(BM_GaussRule)->Arg(32)->Arg(128)->Arg(512);

static void BM_LogGamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(x));
    x += 1e-9;
  }
}
BENCHMARK(BM_LogGamma);

static void BM_Multiplier(benchmark::State& state) {
  FracParams p(BasisParams(1.0), 0.5);
  int n = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiplier(n & 1023, p));
    ++n;
  }
}
BENCHMARK(BM_Multiplier);

static void BM_GegenbauerEval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gegenbauer(n, 1.0, x));
    x += 1e-7;
    if (x > 0.99) x = -0.99;
  }
}
BENCHMARK(BM_GegenbauerEval)->Arg(16)->Arg(64)->Arg(256);

static void BM_KernelK(benchmark::State& state) {
  FracParams p(BasisParams(1.0), 0.5);
  auto inner = gauss_measure(static_cast<int>(state.range(0)), 0.5);
  double y = -0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_K(0.3, y, p, inner));
    y += 1e-5;
    if (y > 0.29) y = -0.7;
  }
}
BENCHMARK(BM_KernelK)->Arg(40)->Arg(160);

static void BM_PoissonKernel(benchmark::State& state) {
  BasisParams p(1.0);
  auto inner = gauss_measure(static_cast<int>(state.range(0)), 0.5);
  double y = -0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(poisson_kernel(0.5, 0.3, y, p, inner));
    y += 1e-5;
    if (y > 0.99) y = -0.7;
  }
}
BENCHMARK(BM_PoissonKernel)->Arg(40)->Arg(160);

static void BM_Analyze(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  BasisParams p(1.0);
  auto rule = gauss_gegenbauer(2 * degree, p);
  auto f = [](double x) { return std::exp(-x) * (1.0 + 0.5 * x * x); };
  for (auto _ : state) {
    auto c = analyze(f, p, degree, rule);
    benchmark::DoNotOptimize(c.coeffs.data());
  }
}
BENCHMARK(BM_Analyze)->Arg(16)->Arg(64)->Arg(256);

static void BM_Synthesize(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoefficientVector c;
  c.lambda = 1.0;
  c.coeffs.resize(degree + 1);
  for (double& a : c.coeffs) a = u(gen);
  double x = -0.95;
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(c, x));
    x += 1e-6;
    if (x > 0.95) x = -0.95;
  }
}
BENCHMARK(BM_Synthesize)->Arg(16)->Arg(64)->Arg(256);

static void BM_HardyCheck(benchmark::State& state) {
  FracParams p(BasisParams(1.0), 0.5);
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoefficientVector c;
  c.lambda = 1.0;
  c.coeffs.resize(11);
  for (double& a : c.coeffs) a = u(gen);
  for (auto _ : state) {
    auto rep = hardy_check(c, p);
    benchmark::DoNotOptimize(rep.deficit);
  }
}
BENCHMARK(BM_HardyCheck);

BENCHMARK_MAIN();
