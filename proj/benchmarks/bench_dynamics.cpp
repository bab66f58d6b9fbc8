#include <benchmark/benchmark.h>

#include "clipflow/dynamics.hpp"
#include "clipflow/generators.hpp"

namespace {

using namespace clipflow;

LeniaSystem standard_system(double dx) {
  return LeniaSystem{discretize_kernel({ExpBumpKernel{1.0}, true}, dx),
                     GrowthSpec{GaussianBumpGrowth{0.15, 0.015}}, ClipBounds::unit()};
}

void BM_LeniaStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double dx = 8.0 / n;
  const LeniaSystem sys = standard_system(dx);
  ScalarField f = blob_field({n, n, dx}, ClipBounds::unit(), 4.0, 4.0, 1.5, 1.0);
  f = lenia_step(f, sys, 0.1);  // warm caches
  for (auto _ : state) {
    benchmark::DoNotOptimize(lenia_step(f, sys, 0.1));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_LeniaStep)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EulerFlow(benchmark::State& state) {
  const long n_steps = state.range(0);
  const LeniaSystem sys = standard_system(0.0625);
  const ScalarField f0 = blob_field({128, 128, 0.0625}, ClipBounds::unit(), 4.0, 4.0, 1.5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(euler_flow(f0, sys, 1.0, n_steps));
  }
}
BENCHMARK(BM_EulerFlow)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_GolStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ScalarField b = random_binary_field({n, n, 1.0}, 3);
  for (auto _ : state) {
    b = gol_step(b);
    benchmark::DoNotOptimize(b.values().data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_GolStep)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_AsymptoticStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double dx = 8.0 / n;
  const LeniaSystem sys = standard_system(dx);
  ScalarField f = blob_field({n, n, dx}, ClipBounds::unit(), 4.0, 4.0, 1.5, 0.9);
  f = asymptotic_step(f, sys, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asymptotic_step(f, sys, 0.1));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_AsymptoticStep)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
