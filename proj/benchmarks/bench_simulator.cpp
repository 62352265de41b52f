#include <benchmark/benchmark.h>

#include "frogcrit/simulator.hpp"

using namespace frogcrit;

static void BM_Firework(benchmark::State &state) {
  const HazardSpec spec(1.0, 0.25);
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_firework(spec, 20, state.range(0), 7, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Firework)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_Frog(benchmark::State &state) {
  FrogSimConfig config{TreeParams(2, 1.0, 0.35), state.range(0), 2000, 7};
  config.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_frog(config));
  state.SetItemsProcessed(state.iterations() * config.replicates);
}
BENCHMARK(BM_Frog)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_BranchHit(benchmark::State &state) {
  const TreeParams params(2, 1.0, 0.3);
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_branch_hit(params, 12, 10'000, 3, 1));
}
BENCHMARK(BM_BranchHit)->Unit(benchmark::kMillisecond);
