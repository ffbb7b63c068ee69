#include "hopcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hopcut {

std::string to_string(OptimumKind kind) {
  return kind == OptimumKind::Exact ? "exact" : "best-known";
}

OptimumKind optimum_kind_from_string(const std::string& s) {
  if (s == "exact") return OptimumKind::Exact;
  if (s == "best-known") return OptimumKind::BestKnown;
  throw std::invalid_argument("unknown optimum kind: " + s);
}

Graph::Graph(int n, std::vector<Edge> edges, std::optional<OptimumInfo> optimum)
    : n_(n), edges_(std::move(edges)), optimum_(optimum) {
  if (n_ < 1) throw std::invalid_argument("Graph: node count must be positive");
  for (auto& e : edges_) {
    if (e.i == e.j) throw std::invalid_argument("Graph: self-loop not allowed");
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n_)
      throw std::invalid_argument("Graph: edge index out of range");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw std::invalid_argument("Graph: duplicate edge");
  }
}

Graph Graph::with_optimum(OptimumInfo info) const {
  Graph g = *this;
  g.optimum_ = info;
  return g;
}

long long Graph::positive_weight() const {
  long long s = 0;
  for (const auto& e : edges_) s += std::max(e.w, 0LL);
  return s;
}

WeightMatrix::WeightMatrix(int n) : n_(n), w_(std::size_t(n) * n, 0.0) {
  if (n < 1) throw std::invalid_argument("WeightMatrix: dimension must be positive");
}

void WeightMatrix::set(int i, int j, double v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::invalid_argument("WeightMatrix: index out of range");
  if (i == j) {
    if (v != 0.0)
      throw std::invalid_argument("WeightMatrix: diagonal must be zero");
    return;
  }
  w_[std::size_t(i) * n_ + j] = v;
  w_[std::size_t(j) * n_ + i] = v;
}

double WeightMatrix::pair_sum() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) s += at(i, j);
  return s;
}

bool is_bipolar(const SpinVector& x) {
  for (double v : x)
    if (v != 1.0 && v != -1.0) return false;
  return true;
}

SpinVector random_spins(int n, Rng& rng) {
  SpinVector x(n);
  for (auto& v : x) v = rng.spin();
  return x;
}

Graph generate_dense_random(int n, double density, bool weighted,
                            std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_dense_random: n must be >= 1");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("generate_dense_random: density must be in (0, 1]");
  Rng rng(derive_seed(seed, 0x67656e));
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.unit() < density) {
        long long w = weighted ? 1 + static_cast<long long>(rng.index(10)) : 1;
        edges.push_back({i, j, w});
      }
    }
  }
  return Graph(n, std::move(edges));
}

WeightMatrix graph_to_weights(const Graph& g) {
  WeightMatrix w(g.n());
  for (const auto& e : g.edges()) w.set(e.i, e.j, -static_cast<double>(e.w));
  return w;
}

long long cut_value(const Graph& g, const SpinVector& x) {
  if (static_cast<int>(x.size()) != g.n())
    throw std::invalid_argument("cut_value: state length does not match graph");
  long long cut = 0;
  for (const auto& e : g.edges()) {
    if (x[e.i] != x[e.j]) cut += e.w;
  }
  return cut;
}

double hopfield_energy(const WeightMatrix& w, const SpinVector& x,
                       std::span<const double> theta) {
  const int n = w.n();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("hopfield_energy: state length mismatch");
  if (!theta.empty() && static_cast<int>(theta.size()) != n)
    throw std::invalid_argument("hopfield_energy: threshold length mismatch");
  double pair = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* row = w.row(i);
    double acc = 0.0;
    for (int j = i + 1; j < n; ++j) acc += row[j] * x[j];
    pair += x[i] * acc;
  }
  double e = -0.5 * pair;
  if (!theta.empty()) {
    for (int i = 0; i < n; ++i) e += theta[i] * x[i];
  }
  return e;
}

double cut_offset(const WeightMatrix& w) { return -0.5 * w.pair_sum(); }

double cut_from_energy(const WeightMatrix& w, double energy) {
  return cut_offset(w) - energy;
}

}  // namespace hopcut
