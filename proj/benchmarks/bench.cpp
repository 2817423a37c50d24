#include <benchmark/benchmark.h>

#include "gribov/analysis.hpp"
#include "gribov/quadrature.hpp"
#include "gribov/spectra.hpp"

using namespace gribov;

static void BM_Aberth(benchmark::State& state) {
  const auto f = CoefficientFamily::gribov({1.0, 0.5}, {0.2, 0.3});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zeros_aberth(f, n));
}
BENCHMARK(BM_Aberth)->Arg(10)->Arg(30)->Arg(100);

static void BM_Dense(benchmark::State& state) {
  const auto f = CoefficientFamily::gribov({1.0, 0.5}, {0.2, 0.3});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigen_dense(f, n));
}
BENCHMARK(BM_Dense)->Arg(10)->Arg(30)->Arg(100);

static void BM_Quadrature(benchmark::State& state) {
  const auto f = CoefficientFamily::gribov(1.0, 0.1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discrete_measure(f, n));
}
BENCHMARK(BM_Quadrature)->Arg(10)->Arg(20);

static void BM_SignProperties(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_sign_properties(1.0, 0.2, 15));
}
BENCHMARK(BM_SignProperties);
BENCHMARK_MAIN();
