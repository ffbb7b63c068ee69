#include <benchmark/benchmark.h>

#include "hopcut/crossbar.hpp"

using namespace hopcut;

namespace {

ConductanceMatrix random_array(int size, std::uint64_t seed) {
  const CrossbarConfig cfg = CrossbarConfig::standard();
  ConductanceMatrix g;
  g.rows = g.cols = size;
  g.logical_n = size;
  g.g_on = cfg.g_on();
  g.g_off = cfg.g_off();
  g.weight_scale = 1.0;
  g.g.resize(std::size_t(size) * size);
  Rng rng(seed);
  for (auto& cell : g.g) cell = rng.unit() < 0.5 ? g.g_on : g.g_off;
  return g;
}

}  // namespace

static void BM_NodalFactorize(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const ConductanceMatrix g = random_array(size, 3);
  NodalSolver solver(size, size, 1.0);
  for (auto _ : state) {
    solver.set_conductances(g);
  }
}
BENCHMARK(BM_NodalFactorize)->Arg(32)->Arg(64)->Arg(128)->Arg(256)
    ->Unit(benchmark::kMillisecond);

static void BM_NodalSolve(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const ConductanceMatrix g = random_array(size, 3);
  NodalSolver solver(g, 1.0);
  Rng rng(5);
  std::vector<double> v(size);
  for (auto& x : v) x = 0.2 * rng.spin();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.column_currents(v).data());
  }
}
BENCHMARK(BM_NodalSolve)->Arg(32)->Arg(64)->Arg(128)->Arg(256)
    ->Unit(benchmark::kMillisecond);

static void BM_NodalBackendBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = generate_dense_random(n, 0.5, false, 1);
  const WeightMatrix w = graph_to_weights(g);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    NodalBackend backend(w, CrossbarConfig::standard(), ++seed);
    benchmark::DoNotOptimize(backend.field_matrix().data());
  }
}
BENCHMARK(BM_NodalBackendBuild)->Arg(60)->Arg(128)
    ->Unit(benchmark::kMillisecond);

static void BM_ErrorSigmaTrialBatch(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  Rng rng(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        error_sigma(CrossbarConfig::standard(), size, 0.5, 30, rng));
  }
}
BENCHMARK(BM_ErrorSigmaTrialBatch)->Arg(32)->Arg(64)
    ->Unit(benchmark::kMillisecond);
