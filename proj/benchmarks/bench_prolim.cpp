// Timings for the main constructions, parameterized by truncation depth.

#include <benchmark/benchmark.h>

#include "prolim/generators.hpp"

using namespace prolim;

namespace {

TruncationBudget at(int depth) { return TruncationBudget::at(depth, depth + 2); }

void BM_InexactnessWitness(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_inexactness_witness(depth));
}
BENCHMARK(BM_InexactnessWitness)->DenseRange(2, 8, 2);

void BM_LevelReplace(benchmark::State& state) {
  gen::Rng rng(7);
  const auto d = gen::random_level_diagram(rng, gen::LevelShape::square_chain, 6, 4);
  const auto b = at(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(level_replace(d, b));
}
BENCHMARK(BM_LevelReplace)->DenseRange(2, 6, 2);

void BM_PullbackLimit(benchmark::State& state) {
  gen::Rng rng(11);
  const auto d = gen::random_cospan(rng, 6, 4);
  const auto b = at(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto l = finite_limit_pro(d, b);
    benchmark::DoNotOptimize(l.apex.at({b.depth}));
  }
}
BENCHMARK(BM_PullbackLimit)->DenseRange(2, 6, 2);

void BM_PushoutColimit(benchmark::State& state) {
  gen::Rng rng(13);
  const auto d = gen::random_span(rng, 6, 4);
  const auto b = at(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cofinite_colimit(d, b));
}
BENCHMARK(BM_PushoutColimit)->DenseRange(2, 4, 1);

void BM_CheckCommute(benchmark::State& state) {
  gen::Rng rng(17);
  const auto inst = gen::random_commute_instance(rng, gen::CommuteShape::pushout, 16, 4);
  const auto x = inst.diagram();
  const auto b = at(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_commute(x, b));
}
BENCHMARK(BM_CheckCommute)->DenseRange(2, 6, 2);

void BM_PairCategoryLimit(benchmark::State& state) {
  gen::Rng rng(19);
  const auto tt = gen::random_tower_of_towers(rng, 4, 8, 3);
  const auto d = tt.diagram("T");
  const auto b = at(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cofiltered_limit_alt(d, b));
}
BENCHMARK(BM_PairCategoryLimit)->DenseRange(2, 4, 1);

void BM_HomBounded(benchmark::State& state) {
  gen::Rng rng(23);
  const auto t = gen::random_tower(rng, 6, 3).pro("T");
  const auto c = ProObject<FinSet>::constant({2}, "c2");
  const auto b = at(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hom_bounded(t, c, b));
}
BENCHMARK(BM_HomBounded)->DenseRange(2, 6, 2);

}  // namespace
BENCHMARK_MAIN();
