#include <benchmark/benchmark.h>

#include "npspace/catalog.hpp"
#include "npspace/level_table.hpp"
#include "npspace/npnorm.hpp"

namespace {

using namespace npspace;

void BM_ZetaTail(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(zeta_tail(2.5, k));
}
BENCHMARK(BM_ZetaTail)->Arg(1)->Arg(64)->Arg(4096);

void BM_NpNorm(benchmark::State& state) {
  OptBudget budget;
  budget.restarts = 4;
  const LevelNormTable table = build_level_table(transpose_map(2), 4, budget);
  const long k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(np_norm(table, NpParameter(3.0), k));
}
BENCHMARK(BM_NpNorm)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
