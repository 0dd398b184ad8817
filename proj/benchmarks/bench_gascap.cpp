#include <benchmark/benchmark.h>

#include <vector>

#include "gascap/capacity.hpp"
#include "gascap/oracle.hpp"
#include "gascap/spectrum.hpp"
#include "gascap/statmech.hpp"

namespace {

using namespace gascap;

const std::vector<int> kIsotropic{1, 1, 1};

void BM_HarmonicLevels(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_levels(3, kIsotropic, cutoff));
}
BENCHMARK(BM_HarmonicLevels)->Arg(40)->Arg(300)->Arg(2000);

void BM_BoxLevels(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(box_levels_3d(cutoff));
}
BENCHMARK(BM_BoxLevels)->Arg(20)->Arg(60);

void BM_SolveFugacity(benchmark::State& state) {
  const auto l = harmonic_levels(3, kIsotropic, 300);
  const Species sp = state.range(0) == 0 ? Species::boson() : Species::fermion(1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_fugacity(l, sp, 1e4, 1.0 / 15.0));
}
BENCHMARK(BM_SolveFugacity)->Arg(0)->Arg(1);

void BM_CapacityCurve(benchmark::State& state) {
  const auto l = harmonic_levels(3, kIsotropic, 300);
  const auto grid = uniform_grid(2.0, 32.0, 200);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(capacity_curve(l, Species::boson(), 1e4, grid, 1.0, threads));
}
BENCHMARK(BM_CapacityCurve)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OracleEnumerate(benchmark::State& state) {
  const LevelList l({{0.0, 1}, {0.5, 1}, {1.2, 1}});
  for (auto _ : state) {
    const auto t = oracle::enumerate(l, Species::boson(), 1.0, Fugacity::from_value(0.5), 60);
    benchmark::DoNotOptimize(oracle::brute_force_entropy_bits(t));
  }
}
BENCHMARK(BM_OracleEnumerate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
