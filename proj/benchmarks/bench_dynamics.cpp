#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "sphereflock/diagnostics.hpp"
#include "sphereflock/dynamics.hpp"
#include "sphereflock/geometry.hpp"
#include "sphereflock/integrator.hpp"
#include "sphereflock/scenario.hpp"

namespace {

using namespace sphereflock;

Ensemble cluster(std::size_t n) {
  std::mt19937_64 rng(12345);
  return random_ensemble(rng, n, 1.0, 0.5);
}

void BM_RotationMatrix(benchmark::State& state) {
  const Vec3 a = Vec3(1, 2, 2) / 3.0;
  const Vec3 b = Vec3(2, -1, 2) / 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transport_matrix(a, b));
  }
}
BENCHMARK(BM_RotationMatrix);

void BM_Rhs(benchmark::State& state) {
  const Ensemble e = cluster(static_cast<std::size_t>(state.range(0)));
  const ModelParams p{paper_kernel(), 1.0};
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rhs(e, p, threads));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rhs)->ArgsProduct({{6, 64, 256}, {1}})->Args({256, 4})->Complexity();

void BM_Rk4Step(benchmark::State& state) {
  const Ensemble e = cluster(static_cast<std::size_t>(state.range(0)));
  const ModelParams p{paper_kernel(), 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4_step(e, 1e-3, p));
  }
}
BENCHMARK(BM_Rk4Step)->Arg(6)->Arg(64);

void BM_Diagnose(benchmark::State& state) {
  const Ensemble e = cluster(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(diagnose(0.0, e, 1.0, {}));
  }
}
BENCHMARK(BM_Diagnose)->Arg(6)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
