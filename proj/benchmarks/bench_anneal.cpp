#include <benchmark/benchmark.h>

#include "hopcut/crossbar.hpp"
#include "hopcut/hnn.hpp"
#include "hopcut/oracle.hpp"

using namespace hopcut;

static void BM_Sweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = generate_dense_random(n, 0.5, false, 1);
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend backend(w);
  Rng rng(7);
  HnnState s{random_spins(n, rng), 0};
  for (auto _ : state) {
    sweep(s, {1, UpdateOrder::RandomPermutation}, 1.5, 0.0,
          ThresholdRule::Literal, rng, backend);
    benchmark::DoNotOptimize(s.v.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Sweep)->Arg(60)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_RunAnneal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = generate_dense_random(n, 0.5, false, 1);
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend backend(w);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const AnnealTrace t = run_anneal(
        w, {1, UpdateOrder::RandomPermutation},
        NoiseSchedule::quad_superlinear(5.0), ThresholdSchedule::zero(),
        ThresholdRule::Literal, 100, ++seed, backend);
    benchmark::DoNotOptimize(t.best_cut);
  }
}
BENCHMARK(BM_RunAnneal)->Arg(60)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_SaBaseline(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = generate_dense_random(n, 0.5, false, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sa_baseline(g, 50LL * n, 3.0, 0.05, ++seed).best_cut);
  }
}
BENCHMARK(BM_SaBaseline)->Arg(60)->Arg(128)->Unit(benchmark::kMicrosecond);
