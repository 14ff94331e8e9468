#include <benchmark/benchmark.h>

#include "intricacy/engine.hpp"

using namespace intricacy;

namespace {

void BM_count_words_golden(benchmark::State& state) {
  ShiftSpace gm = golden_mean_shift();
  LatticeWindow fn = folner_window(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_words(gm, fn));
}
BENCHMARK(BM_count_words_golden)->Arg(16)->Arg(64)->Arg(256);

void BM_n_join_golden(benchmark::State& state) {
  ShiftSpace gm = golden_mean_shift();
  CylinderCover part = symbol_partition(gm);
  LatticeWindow fn = folner_window(static_cast<int>(state.range(0)), 1);
  SubsetMask full{&fn, (1ull << fn.size()) - 1};
  for (auto _ : state) benchmark::DoNotOptimize(n_join(gm, part, full));
}
BENCHMARK(BM_n_join_golden)->Arg(6)->Arg(10);

void BM_asc_top_exact(benchmark::State& state) {
  ShiftSpace gm = golden_mean_shift();
  CylinderCover part = symbol_partition(gm);
  EngineOptions opts;
  opts.n_min = opts.n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(asc_top(gm, part, opts));
}
BENCHMARK(BM_asc_top_exact)->Arg(6)->Arg(10);

void BM_cover_entropy(benchmark::State& state) {
  ShiftSpace full3 = full_shift(3);
  ShiftMeasure mu = ShiftMeasure::bernoulli({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CylinderCover cover;
  cover.name = "two-overlap";
  cover.base = folner_window(1, 1);
  cover.elements = {{0, 1}, {1, 2}};
  LatticeWindow fn = folner_window(static_cast<int>(state.range(0)), 1);
  SubsetMask full{&fn, (1ull << fn.size()) - 1};
  for (auto _ : state) benchmark::DoNotOptimize(cover_entropy(full3, mu, cover, full));
}
BENCHMARK(BM_cover_entropy)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
