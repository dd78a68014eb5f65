// Serial vs OpenMP timings for the parallel kernels. The second argument of
// each benchmark selects the path: 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "imbalab/empirical.hpp"
#include "imbalab/influence.hpp"
#include "imbalab/rules.hpp"
#include "imbalab/search.hpp"

using namespace imbalab;

namespace {

GaussianMixtureModel example3() { return GaussianMixtureModel({3, 5, 6}, 0.5, ClassDistribution({0.6, 0.3, 0.1})); }

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_GridSearch(benchmark::State& state) {
  const auto model = example3();
  SearchOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_rule(model, ScoreKind::g_mean, opts));
}
BENCHMARK(BM_GridSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EmpiricalConfusion(benchmark::State& state) {
  const auto model = example3();
  const auto s = imbalab::sample(model, 1000000, 42);
  const auto rule = bdr(model);
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(empirical_confusion(s, rule, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.size()));
}
BENCHMARK(BM_EmpiricalConfusion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_InfluenceSweep(benchmark::State& state) {
  const std::vector<ScoreKind> kinds = {ScoreKind::acc, ScoreKind::a_mean, ScoreKind::g_mean, ScoreKind::min_r};
  const auto grid = default_grid(3);
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(sweep(kinds, 3, grid, kDefaultInfluenceTol, exec));
}
BENCHMARK(BM_InfluenceSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Sampling is sequential per stream; reported for scale next to the counting kernel.
void BM_Sample(benchmark::State& state) {
  const auto model = example3();
  for (auto _ : state) benchmark::DoNotOptimize(imbalab::sample(model, 1000000, 42));
  state.SetItemsProcessed(state.iterations() * 1000000);
}
BENCHMARK(BM_Sample)->Unit(benchmark::kMillisecond);

void BM_RandomOversampling(benchmark::State& state) {
  const auto s = imbalab::sample(example3(), 1000000, 42);
  for (auto _ : state) benchmark::DoNotOptimize(ros(s, 7));
}
BENCHMARK(BM_RandomOversampling)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
