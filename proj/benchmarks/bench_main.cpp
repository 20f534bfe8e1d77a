#include <benchmark/benchmark.h>

#include "fringe/canonical.hpp"
#include "fringe/census.hpp"
#include "fringe/increasing.hpp"
#include "fringe/rng.hpp"
#include "fringe/simply_generated.hpp"

using namespace fringe;

static void BM_SampleConditionedPlane(benchmark::State& state) {
  GwSampler sampler(WeightSequence::plane());
  SplitRng rng(1, 0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(n, rng));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleConditionedPlane)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_SampleBst(benchmark::State& state) {
  IncSampler sampler(IncFamily::bst());
  SplitRng rng(2, 0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(n, rng));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleBst)->Arg(1000)->Arg(100000);

static void BM_DistinctFringe(benchmark::State& state) {
  GwSampler sampler(WeightSequence::dary(2));
  SplitRng rng(3, 0);
  Tree t = sampler.sample(static_cast<std::size_t>(state.range(0)), rng);
  const auto notion = static_cast<IsoNotion>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_distinct_fringe(t, notion));
  state.SetItemsProcessed(state.iterations() * t.size());
}
BENCHMARK(BM_DistinctFringe)
    ->Args({100000, 0})
    ->Args({100000, 1})
    ->Args({100000, 2});

static void BM_FringeSizes(benchmark::State& state) {
  GwSampler sampler(WeightSequence::plane());
  SplitRng rng(4, 0);
  Tree t = sampler.sample(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(fringe_sizes(t));
}
BENCHMARK(BM_FringeSizes)->Arg(100000);

BENCHMARK_MAIN();
