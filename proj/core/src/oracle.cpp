#include "hopcut/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "hopcut/parallel.hpp"

namespace hopcut {

namespace {

// dense adjacency rows in cut units (a_ij = edge weight, 0 if absent)
std::vector<long long> adjacency_rows(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<long long> a(n * n, 0);
  for (const auto& e : g.edges()) {
    a[std::size_t(e.i) * n + e.j] = e.w;
    a[std::size_t(e.j) * n + e.i] = e.w;
  }
  return a;
}

}  // namespace

OracleResult exact_max_cut(const Graph& g, int node_limit) {
  const int n = g.n();
  if (n > node_limit)
    throw std::invalid_argument(
        "exact_max_cut: instance exceeds enumeration node limit");

  const auto adj = adjacency_rows(g);
  SpinVector x(n, 1.0);
  // f_i = sum_j a_ij x_j; flipping node k changes the cut by x_k * f_k
  std::vector<long long> f(n, 0);
  for (int i = 0; i < n; ++i) {
    long long acc = 0;
    for (int j = 0; j < n; ++j) acc += adj[std::size_t(i) * n + j];
    f[i] = acc;
  }

  long long cut = 0;  // all nodes on one side
  OracleResult best;
  best.method = OracleMethod::Exact;
  best.best_cut = cut;
  best.best_state = x;
  best.evaluations = 1ull << (n - 1);

  // Gray code over nodes 1..n-1; consecutive codes differ in one bit
  const std::uint64_t states = 1ull << (n - 1);
  for (std::uint64_t k = 1; k < states; ++k) {
    const int node = std::countr_zero(k) + 1;
    const double old = x[node];
    cut += static_cast<long long>(old) * f[node];
    x[node] = -old;
    const long long twice = 2 * static_cast<long long>(old);
    const long long* row = adj.data() + std::size_t(node) * n;
    for (int j = 0; j < n; ++j) f[j] -= twice * row[j];
    if (cut > best.best_cut) {
      best.best_cut = cut;
      best.best_state = x;
    }
  }
  return best;
}

OracleResult sa_baseline(const Graph& g, long long steps, double t_init,
                         double t_final, std::uint64_t seed) {
  if (steps < 1) throw std::invalid_argument("sa_baseline: steps must be >= 1");
  if (!(t_init > t_final) || !(t_final > 0.0))
    throw std::invalid_argument("sa_baseline: need t_init > t_final > 0");

  const int n = g.n();
  const auto adj = adjacency_rows(g);
  Rng rng(seed);
  SpinVector x = random_spins(n, rng);

  std::vector<long long> f(n, 0);
  long long cut = 0;
  for (const auto& e : g.edges()) {
    if (x[e.i] != x[e.j]) cut += e.w;
  }
  for (int i = 0; i < n; ++i) {
    long long acc = 0;
    for (int j = 0; j < n; ++j)
      acc += adj[std::size_t(i) * n + j] * static_cast<long long>(x[j]);
    f[i] = acc;
  }

  OracleResult best;
  best.method = OracleMethod::SaBestOfK;
  best.best_cut = cut;
  best.best_state = x;
  best.evaluations = static_cast<std::uint64_t>(steps);

  const double ratio = steps > 1 ? std::pow(t_final / t_init,
                                            1.0 / static_cast<double>(steps - 1))
                                 : 1.0;
  double temp = t_init;
  for (long long s = 0; s < steps; ++s, temp *= ratio) {
    const int node = static_cast<int>(rng.index(n));
    const double old = x[node];
    const long long delta = static_cast<long long>(old) * f[node];
    if (delta >= 0 ||
        rng.unit() < std::exp(static_cast<double>(delta) / temp)) {
      cut += delta;
      x[node] = -old;
      const long long twice = 2 * static_cast<long long>(old);
      const long long* row = adj.data() + std::size_t(node) * n;
      for (int j = 0; j < n; ++j) f[j] -= twice * row[j];
      if (cut > best.best_cut) {
        best.best_cut = cut;
        best.best_state = x;
      }
    }
  }
  return best;
}

OptimumInfo reference_optimum(const Graph& g, const ReferenceBudget& budget) {
  if (g.optimum()) return *g.optimum();
  if (g.n() <= budget.exact_node_limit) {
    return {exact_max_cut(g, budget.exact_node_limit).best_cut,
            OptimumKind::Exact};
  }
  const long long steps =
      budget.sa_steps > 0 ? budget.sa_steps : 50LL * g.n();
  const std::size_t restarts =
      static_cast<std::size_t>(std::max<long long>(budget.sa_restarts, 1));
  std::vector<long long> bests(restarts);
  parallel_for(restarts, budget.jobs, [&](std::size_t r) {
    bests[r] = sa_baseline(g, steps, budget.sa_t_init, budget.sa_t_final,
                           derive_seed(budget.seed, r, 0x5a))
                   .best_cut;
  });
  long long best = bests.front();
  for (long long b : bests) best = std::max(best, b);
  return {best, OptimumKind::BestKnown};
}

}  // namespace hopcut
