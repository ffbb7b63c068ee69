#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hopcut/rng.hpp"

namespace hopcut {

enum class OptimumKind { Exact, BestKnown };

std::string to_string(OptimumKind kind);  // "exact" / "best-known"
OptimumKind optimum_kind_from_string(const std::string& s);

// Reference cut value for an instance, with provenance.
struct OptimumInfo {
  long long value = 0;
  OptimumKind kind = OptimumKind::Exact;
};

// Undirected weighted edge, canonical orientation i < j.
struct Edge {
  int i = 0;
  int j = 0;
  long long w = 1;
};

// Max-Cut instance: n nodes and an integer-weighted edge list, plus an
// optional known optimum. Immutable after construction; the constructor
// canonicalizes edge orientation, sorts by (i, j) and rejects self-loops,
// out-of-range indices and duplicate pairs.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges,
        std::optional<OptimumInfo> optimum = std::nullopt);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<OptimumInfo>& optimum() const { return optimum_; }

  Graph with_optimum(OptimumInfo info) const;

  // sum of max(w, 0) over edges; upper bound for any cut
  long long positive_weight() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::optional<OptimumInfo> optimum_;
};

// Dense symmetric coupling matrix with zero diagonal. For a Max-Cut instance
// this is the negated adjacency matrix (graph_to_weights).
class WeightMatrix {
 public:
  explicit WeightMatrix(int n);

  int n() const { return n_; }
  double at(int i, int j) const { return w_[std::size_t(i) * n_ + j]; }

  // writes (i, j) and (j, i); the diagonal must stay zero
  void set(int i, int j, double v);

  const double* row(int i) const { return w_.data() + std::size_t(i) * n_; }

  // sum of w_ij over i < j
  double pair_sum() const;

 private:
  int n_;
  std::vector<double> w_;
};

// Bipolar node vector; entries are exactly +1.0 or -1.0 (stored as double so
// the hot field-accumulation loops vectorize).
using SpinVector = std::vector<double>;

bool is_bipolar(const SpinVector& x);
SpinVector random_spins(int n, Rng& rng);

// Erdos-Renyi style instance: every unordered pair becomes an edge with
// probability `density`, independently. Unweighted edges get w = 1; weighted
// edges draw w uniformly from {1, ..., 10}. Deterministic per seed.
Graph generate_dense_random(int n, double density, bool weighted,
                            std::uint64_t seed);

WeightMatrix graph_to_weights(const Graph& g);

// total weight of edges whose endpoints fall on opposite sides
long long cut_value(const Graph& g, const SpinVector& x);

// E(x) = -1/2 sum_{i<j} w_ij x_i x_j + sum_i theta_i x_i
// (pair-sum convention; theta omitted or empty means zero thresholds)
double hopfield_energy(const WeightMatrix& w, const SpinVector& x,
                       std::span<const double> theta = {});

// offset = -1/2 sum_{i<j} w_ij, so that cut = offset - energy(theta = 0)
double cut_offset(const WeightMatrix& w);
double cut_from_energy(const WeightMatrix& w, double energy);

}  // namespace hopcut
