#include <benchmark/benchmark.h>

#include "bcirc/closedform.hpp"
#include "bcirc/ensembles.hpp"
#include "bcirc/genpattern.hpp"
#include "bcirc/moments.hpp"
#include "bcirc/spectra.hpp"

using namespace bcirc;

static void BM_EigsDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Ensemble e(EnsembleSpec::block_circulant(n, 4, 1));
  const SymmetricMatrix a = e.sample(0);
  for (auto _ : state) benchmark::DoNotOptimize(eigs_dense(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigsDense)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

static void BM_EigsBlockCirculant(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Ensemble e(EnsembleSpec::block_circulant(n, 4, 1));
  const SymmetricMatrix a = e.sample(0);
  for (auto _ : state) benchmark::DoNotOptimize(eigs_block_circulant(e.spec(), a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigsBlockCirculant)->RangeMultiplier(2)->Range(32, 1024)->Complexity(benchmark::oNSquared);

static void BM_SampleMatrix(benchmark::State& state) {
  const Ensemble e(EnsembleSpec::block_circulant(static_cast<std::size_t>(state.range(0)), 2, 1));
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(e.sample(t++));
}
BENCHMARK(BM_SampleMatrix)->Arg(100)->Arg(400);

static void BM_EpsilonTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(epsilon_table(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_EpsilonTable)->Arg(8)->Arg(32)->Arg(64);

static void BM_GenusHistogram(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(genus_histogram(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_GenusHistogram)->DenseRange(4, 6);

static void BM_PairingCount(benchmark::State& state) {
  const Pattern p = Pattern::parse("abab");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pattern_moment_pairing_count(p, n, 3));
}
BENCHMARK(BM_PairingCount)->Arg(60)->Arg(240);

static void BM_DensityGrid(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  const auto grid = uniform_grid(-5.0, 5.0, 0.01);
  const DensityModel f(m);
  for (auto _ : state)
    for (double x : grid) benchmark::DoNotOptimize(f(x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_DensityGrid)->Arg(2)->Arg(16)->Arg(128);
BENCHMARK_MAIN();
