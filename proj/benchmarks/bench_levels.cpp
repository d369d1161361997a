#include <benchmark/benchmark.h>

#include "npspace/catalog.hpp"
#include "npspace/level_table.hpp"
#include "npspace/random.hpp"

namespace {

using namespace npspace;

void BM_LevelNorm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  Rng rng(7);
  const SpaceElement x = SpaceElement::random(full_matrix_space(d), n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(level_norm(x));
}
BENCHMARK(BM_LevelNorm)->ArgsProduct({{2, 3}, {1, 2, 4, 8}});

void BM_LevelNormBracket(benchmark::State& state) {
  const MapPtr phi = transpose_map(static_cast<int>(state.range(0)));
  const int n = static_cast<int>(state.range(1));
  OptBudget budget;
  budget.restarts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(level_norm_bracket(*phi, n, budget));
}
BENCHMARK(BM_LevelNormBracket)->ArgsProduct({{2, 3}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

void BM_BuildTable(benchmark::State& state) {
  const MapPtr phi = random_map(2, 11);
  OptBudget budget;
  budget.restarts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(build_level_table(phi, static_cast<int>(state.range(0)), budget));
}
BENCHMARK(BM_BuildTable)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
