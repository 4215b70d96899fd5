#include <benchmark/benchmark.h>

#include <cmath>

#include "progdist/discrepancy.hpp"
#include "progdist/kloosterman.hpp"
#include "progdist/poisson.hpp"
#include "progdist/ramare.hpp"

using namespace progdist;

static void BM_BuildSpf(benchmark::State& state) {
  const auto n = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_spf(1, n + 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildSpf)->RangeMultiplier(10)->Range(100000, 10000000)->Unit(benchmark::kMillisecond);

static void BM_Scan(benchmark::State& state) {
  const auto X = static_cast<u64>(state.range(0));
  const DiscrepancyParams p{X, static_cast<u64>(std::pow(static_cast<double>(X), 0.45)), 1, 0.1, 0.01, false};
  const auto f = builtin("liouville");
  for (auto _ : state) benchmark::DoNotOptimize(scan(f, p));
}
BENCHMARK(BM_Scan)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_BilinearSum(benchmark::State& state) {
  PhaseSpec s;
  s.Q = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bilinear_sum(s));
}
BENCHMARK(BM_BilinearSum)->RangeMultiplier(2)->Range(200, 3200)->Unit(benchmark::kMillisecond);

static void BM_OmegaHistogram(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(omega_histogram(852891037441, 2, 31));
}
BENCHMARK(BM_OmegaHistogram)->Unit(benchmark::kMillisecond);

static void BM_CutoffFourier(benchmark::State& state) {
  const SmoothCutoff W(0.1, 0.9, 20);
  benchmark::DoNotOptimize(bump_derivative_l1(kMaxDerivative));  // static tables
  double xi = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier_W(W, xi));
    xi = xi < 500 ? xi * 1.1 : 1;
  }
}
BENCHMARK(BM_CutoffFourier)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
