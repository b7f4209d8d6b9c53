#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "jep/exact.hpp"
#include "jep/gibbs.hpp"
#include "jep/harness.hpp"
#include "jep/jump_family.hpp"
#include "jep/process.hpp"
#include "jep/rng.hpp"

namespace {

using namespace jep;

void BM_AvoidingShift(benchmark::State& state) {
  ParticleConfig avoid({0, 2, 3, 7, 11, 12, 20, 31});
  Height x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(avoiding_shift(avoid, x));
    x = (x + 1) & 63;
  }
}
BENCHMARK(BM_AvoidingShift);

void BM_NoncollidingUnion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream stream(1);
  std::vector<Height> draws(n);
  for (auto _ : state) {
    for (Height& xi : draws) xi = stream.next_geometric(0.5);
    benchmark::DoNotOptimize(noncolliding_union(ParticleConfig{}, draws));
  }
}
BENCHMARK(BM_NoncollidingUnion)->Arg(2)->Arg(8)->Arg(32);

void BM_MemorylessSample(benchmark::State& state) {
  MemorylessFamily family(0.5);
  ParticleConfig avoid({1, 4, 6});
  RandomStream stream(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(family.sample(avoid, stream));
  }
}
BENCHMARK(BM_MemorylessSample);

void BM_SimulateSteps(benchmark::State& state) {
  MemorylessFamily family(0.5);
  RandomStream stream(3);
  ParticleConfig x({1, 4, 7});
  for (auto _ : state) {
    x = step(x, family, stream);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_SimulateSteps);

void BM_SampleGibbs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream stream(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_gibbs(ParticleConfig{}, n, 0.5, stream));
  }
}
BENCHMARK(BM_SampleGibbs)->Arg(2)->Arg(5)->Arg(10);

void BM_BuildMatrix(benchmark::State& state) {
  const Height h_max = state.range(0);
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, h_max);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_matrix(family, space));
  }
  state.SetComplexityN(static_cast<std::int64_t>(space.size()));
}
BENCHMARK(BM_BuildMatrix)->Arg(20)->Arg(40)->Arg(80)->Complexity();

void BM_StationaryDense(benchmark::State& state) {
  const Height h_max = state.range(0);
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, h_max);
  StochasticMatrix matrix = build_matrix(family, space);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary_distribution(matrix, 1e-8));
  }
}
BENCHMARK(BM_StationaryDense)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_DistributionAtTime(benchmark::State& state) {
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(3, 40);
  StochasticMatrix matrix = build_matrix(family, space);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        distribution_at_time(ParticleConfig({1, 4, 7}), space, matrix, 8));
  }
}
BENCHMARK(BM_DistributionAtTime)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
