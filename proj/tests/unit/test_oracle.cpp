#include "doctest.h"

#include <stdexcept>

#include <algorithm>
#include <numeric>

#include "hopcut/hnn.hpp"
#include "hopcut/oracle.hpp"

using namespace hopcut;

namespace {

Graph k3() { return Graph(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}); }

// second enumeration path: walk every state with node 0 free and evaluate
// cut_value from scratch
long long brute_force_all_states(const Graph& g) {
  const int n = g.n();
  long long best = 0;
  SpinVector x(n);
  for (std::uint64_t m = 0; m < (1ull << n); ++m) {
    for (int i = 0; i < n; ++i) x[i] = (m >> i) & 1 ? 1.0 : -1.0;
    best = std::max(best, cut_value(g, x));
  }
  return best;
}

Graph permuted(const Graph& g, const std::vector<int>& perm) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.i], perm[e.j], e.w});
  return Graph(g.n(), std::move(edges));
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("exact oracle on tiny instances") {
  CHECK(exact_max_cut(k3()).best_cut == 2);
  CHECK(exact_max_cut(Graph(2, {{0, 1, 1}})).best_cut == 1);
  CHECK(exact_max_cut(Graph(1, {})).best_cut == 0);

  const OracleResult r = exact_max_cut(k3());
  CHECK(r.method == OracleMethod::Exact);
  CHECK(r.evaluations == 4);  // 2^(3-1)
  CHECK(cut_value(k3(), r.best_state) == 2);
}

TEST_CASE("exact oracle refuses beyond the node limit") {
  const Graph g = generate_dense_random(12, 0.5, false, 3);
  CHECK_THROWS_AS(exact_max_cut(g, 10), std::invalid_argument);
}

TEST_CASE("exact oracle agrees with full-state brute force") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Graph g = generate_dense_random(10, 0.5, seed % 3 == 0, 900 + seed);
    const OracleResult r = exact_max_cut(g);
    CHECK(r.best_cut == brute_force_all_states(g));
    CHECK(cut_value(g, r.best_state) == r.best_cut);
  }
}

TEST_CASE("relabeling nodes leaves the optimum unchanged") {
  Rng rng(17);
  for (int gi = 0; gi < 20; ++gi) {
    const Graph g = generate_dense_random(11, 0.4, gi % 2 == 0, 40 + gi);
    const long long ref = exact_max_cut(g).best_cut;
    std::vector<int> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    for (int p = 0; p < 5; ++p) {
      shuffle(perm, rng);
      CHECK(exact_max_cut(permuted(g, perm)).best_cut == ref);
    }
  }
}

TEST_CASE("sa_baseline finds the triangle optimum and stays in bounds") {
  const OracleResult r = sa_baseline(k3(), 1000, 2.0, 0.05, 7);
  CHECK(r.best_cut == 2);
  CHECK(r.method == OracleMethod::SaBestOfK);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = generate_dense_random(14, 0.5, false, 60 + seed);
    const long long exact = exact_max_cut(g).best_cut;
    const OracleResult s = sa_baseline(g, 3000, 3.0, 0.05, seed);
    CHECK(s.best_cut <= exact);
    CHECK(cut_value(g, s.best_state) == s.best_cut);
  }
}

TEST_CASE("sa_baseline: determinism and argument checks") {
  const Graph g = generate_dense_random(16, 0.5, false, 5);
  const OracleResult a = sa_baseline(g, 2000, 3.0, 0.1, 99);
  const OracleResult b = sa_baseline(g, 2000, 3.0, 0.1, 99);
  CHECK(a.best_cut == b.best_cut);
  CHECK(a.best_state == b.best_state);

  CHECK_THROWS_AS(sa_baseline(g, 0, 3.0, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sa_baseline(g, 100, 0.1, 3.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sa_baseline(g, 100, 3.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("sa best over restarts is monotone in the restart count") {
  const Graph g = generate_dense_random(20, 0.5, false, 8);
  long long best = 0;
  std::vector<long long> running;
  for (int r = 0; r < 30; ++r) {
    best = std::max(best, sa_baseline(g, 1000, 3.0, 0.05,
                                      derive_seed(123, r))
                              .best_cut);
    running.push_back(best);
  }
  CHECK(std::is_sorted(running.begin(), running.end()));
}

TEST_CASE("reference_optimum resolution order") {
  // file metadata wins
  const Graph annotated = k3().with_optimum({2, OptimumKind::Exact});
  const OptimumInfo from_file = reference_optimum(annotated);
  CHECK(from_file.value == 2);
  CHECK(from_file.kind == OptimumKind::Exact);

  // small instances get the exhaustive value
  const Graph small = generate_dense_random(10, 0.5, false, 70);
  const OptimumInfo exact = reference_optimum(small);
  CHECK(exact.kind == OptimumKind::Exact);
  CHECK(exact.value == exact_max_cut(small).best_cut);

  // past the limit the tag flips to best-known and dominates single runs
  ReferenceBudget budget;
  budget.exact_node_limit = 8;
  budget.sa_restarts = 200;
  const OptimumInfo bk = reference_optimum(small, budget);
  CHECK(bk.kind == OptimumKind::BestKnown);
  CHECK(bk.value <= exact.value);
  CHECK(bk.value >= sa_baseline(small, 500, 3.0, 0.05, 4).best_cut - 0);
  // with this budget the 10-node instance is actually solved
  CHECK(bk.value == exact.value);
}

TEST_CASE("hnn best-encountered meets the exact optimum on small graphs") {
  // cross-oracle agreement: anneal with fixed noise, many seeds
  int agreed = 0;
  for (int gi = 0; gi < 10; ++gi) {
    const Graph g = generate_dense_random(12, 0.5, false, 200 + gi);
    const WeightMatrix w = graph_to_weights(g);
    const long long exact = exact_max_cut(g).best_cut;
    IdealBackend backend(w);
    long long best = 0;
    for (std::uint64_t seed = 0; seed < 40 && best < exact; ++seed) {
      const AnnealTrace t = run_anneal(
          w, {1, UpdateOrder::RandomPermutation}, NoiseSchedule::fixed(1.5),
          ThresholdSchedule::zero(), ThresholdRule::Literal, 60,
          derive_seed(1000 + gi, seed), backend);
      best = std::max(best, t.best_cut);
      CHECK(t.best_cut <= exact);
    }
    agreed += best == exact ? 1 : 0;
  }
  CHECK(agreed == 10);
}

}  // TEST_SUITE
