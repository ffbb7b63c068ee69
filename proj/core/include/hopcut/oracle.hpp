#pragma once

#include <cstdint>

#include "hopcut/graph.hpp"

namespace hopcut {

enum class OracleMethod { Exact, SaBestOfK };

struct OracleResult {
  long long best_cut = 0;
  SpinVector best_state;
  OracleMethod method = OracleMethod::Exact;
  std::uint64_t evaluations = 0;
};

// Exhaustive Max-Cut over all 2^(n-1) distinct partitions (node 0 pinned to
// +1; a global spin flip leaves the cut unchanged). Gray-code enumeration
// with incremental cut updates. Refuses n > node_limit.
OracleResult exact_max_cut(const Graph& g, int node_limit = 26);

// Single-flip Metropolis on the cut value with a geometric temperature
// schedule from t_init down to t_final over `steps` proposals. Uphill in cut
// is always accepted; downhill moves with probability exp(delta/T). Tracks
// the best state encountered. Deterministic per seed.
OracleResult sa_baseline(const Graph& g, long long steps, double t_init,
                         double t_final, std::uint64_t seed);

// Budget for establishing a reference optimum when the instance file does not
// declare one. sa_steps = 0 picks 50 * n proposals per restart.
struct ReferenceBudget {
  int exact_node_limit = 26;
  long long sa_restarts = 100000;
  long long sa_steps = 0;
  double sa_t_init = 3.0;
  double sa_t_final = 0.05;
  std::uint64_t seed = 1;
  int jobs = 1;
};

// File-declared optimum if present, else exhaustive for n <= exact_node_limit,
// else best over sa_restarts independent restarts, tagged best-known.
OptimumInfo reference_optimum(const Graph& g, const ReferenceBudget& budget = {});

}  // namespace hopcut
