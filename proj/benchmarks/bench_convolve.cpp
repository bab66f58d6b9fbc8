#include <benchmark/benchmark.h>

#include "clipflow/convolve.hpp"
#include "clipflow/generators.hpp"

namespace {

using namespace clipflow;

DiscreteKernel ring_kernel(double dx) {
  return discretize_kernel({ExpBumpKernel{1.0}, true}, dx);
}

void BM_ConvolveDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double dx = 8.0 / n;  // fixed 8x8 domain: kernel cell count scales with n
  const DiscreteKernel k = ring_kernel(dx);
  const ScalarField f = random_field({n, n, dx}, ClipBounds::unit(), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve_direct(f, k));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ConvolveDirect)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ConvolveFft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double dx = 8.0 / n;
  const DiscreteKernel k = ring_kernel(dx);
  const ScalarField f = random_field({n, n, dx}, ClipBounds::unit(), 1);
  convolve_fft(f, k);  // warm the plan and spectrum caches
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve_fft(f, k));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ConvolveFft)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
