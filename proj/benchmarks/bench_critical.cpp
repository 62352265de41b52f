#include <benchmark/benchmark.h>

#include <vector>

#include "frogcrit/critical.hpp"
#include "frogcrit/renewal.hpp"

using namespace frogcrit;

static void BM_SolveQc(benchmark::State &state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_qc(d, 1.0));
}
BENCHMARK(BM_SolveQc)->Arg(2)->Arg(10)->Arg(100);

static void BM_SurvivalSeries(benchmark::State &state) {
  const int d = static_cast<int>(state.range(0));
  const double q = 0.9 / d;
  for (auto _ : state)
    benchmark::DoNotOptimize(survival_series(d, 1.0, q));
}
BENCHMARK(BM_SurvivalSeries)->Arg(2)->Arg(100);

static void BM_TableCone(benchmark::State &state) {
  const std::vector<int> ds{2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30, 50, 100};
  for (auto _ : state)
    benchmark::DoNotOptimize(table_cone(ds));
}
BENCHMARK(BM_TableCone)->Unit(benchmark::kMillisecond);

static void BM_ConvergenceRate(benchmark::State &state) {
  const HazardSpec spec(1.0, 0.2728);
  for (auto _ : state)
    benchmark::DoNotOptimize(convergence_rate(spec));
}
BENCHMARK(BM_ConvergenceRate);

static void BM_RenewalProbabilities(benchmark::State &state) {
  const HazardSpec spec(1.0, 0.25);
  for (auto _ : state)
    benchmark::DoNotOptimize(renewal_probabilities(spec, state.range(0)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RenewalProbabilities)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);
BENCHMARK_MAIN();
