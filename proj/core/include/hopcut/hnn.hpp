#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hopcut/graph.hpp"
#include "hopcut/schedules.hpp"

namespace hopcut {

// Node state of a run plus the sweep counter.
struct HnnState {
  SpinVector v;
  int cycle = 0;
};

enum class UpdateOrder { RandomPermutation, FixedIndex };

// How one sweep visits the nodes: ceil(n / batch_size) sub-steps, each
// updating batch_size nodes at once from the state committed by the previous
// sub-step. batch_size = 1 is the asynchronous limit, batch_size = n the
// synchronous one.
struct UpdatePlan {
  int batch_size = 1;
  UpdateOrder order = UpdateOrder::RandomPermutation;
};

enum class ThresholdRule {
  // new state is +1 iff u + eta >= theta (boundary inclusive)
  Literal,
  // state s flips to -s only if s * (u + eta) <= -theta; theta acts as a
  // symmetric flip-resistance margin
  Hysteresis,
};

// Supplies the weighted feedback u for a set of nodes given the current
// state. Implementations may be exact or emulate an analog readout; they may
// hold per-run mutable state (noise generators), so one instance must not be
// shared between concurrent runs.
class FieldBackend {
 public:
  virtual ~FieldBackend() = default;
  virtual int n() const = 0;
  // out[k] = u_{nodes[k]} evaluated on v
  virtual void local_fields(const SpinVector& v, std::span<const int> nodes,
                            std::span<double> out) = 0;
};

// Exact dense readout; references the caller-owned weight matrix.
class IdealBackend final : public FieldBackend {
 public:
  explicit IdealBackend(const WeightMatrix& w) : w_(&w) {}
  int n() const override { return w_->n(); }
  void local_fields(const SpinVector& v, std::span<const int> nodes,
                    std::span<double> out) override;

 private:
  const WeightMatrix* w_;
};

// u_i = sum_j W_ij v_j for each requested node (zero diagonal makes the
// self-term vanish)
void local_fields(const WeightMatrix& w, const SpinVector& v,
                  std::span<const int> nodes, std::span<double> out);
std::vector<double> local_fields(const WeightMatrix& w, const SpinVector& v);

double apply_threshold(double u_plus_eta, double theta, double current,
                       ThresholdRule rule);

// One sweep with explicit node order and per-node noise (noise[k] applies to
// order[k]). Every node must appear exactly once in `order`. Returns the
// number of flips. This is the deterministic building block; the Rng overload
// below is the one callers normally use.
int sweep(HnnState& state, const UpdatePlan& plan, std::span<const int> order,
          std::span<const double> noise, double theta, ThresholdRule rule,
          FieldBackend& backend);

// One sweep: draws the node order (for RandomPermutation plans) and one fresh
// noise value per node from rng, then advances the state. Returns flips.
int sweep(HnnState& state, const UpdatePlan& plan, double noise_amplitude,
          double theta, ThresholdRule rule, Rng& rng, FieldBackend& backend);

// Per-sweep history of one annealing run. energy and cut have sweeps+1
// entries (initial state first); energy is recorded without any threshold
// term so cut = cut_offset(W) - energy holds exactly at every row.
struct AnnealTrace {
  std::vector<double> energy;
  std::vector<long long> cut;
  long long best_cut = 0;
  int best_sweep = 0;
  SpinVector final_state;
  SpinVector best_state;
  std::uint64_t seed = 0;

  long long final_cut() const { return cut.empty() ? 0 : cut.back(); }
};

// Full annealing run: the initial state is drawn uniformly from {-1,+1}^n
// using `seed`; sweep t (1-based) runs at amplitude(noise, t, sweeps) and
// threshold_at(threshold, t, sweeps), so decaying profiles reach their final
// value on the last sweep. Deterministic per (inputs, seed).
AnnealTrace run_anneal(const WeightMatrix& w, const UpdatePlan& plan,
                       const NoiseSchedule& noise,
                       const ThresholdSchedule& threshold, ThresholdRule rule,
                       int sweeps, std::uint64_t seed, FieldBackend& backend);

// Solver parameters shared by campaigns and the CLI.
struct SolverConfig {
  UpdatePlan plan;
  NoiseSchedule noise;
  ThresholdSchedule threshold;
  ThresholdRule rule = ThresholdRule::Literal;
  int sweeps = 1000;
};

// columns: sweep,energy,cut
void write_trace_csv(const AnnealTrace& trace, std::ostream& out);

}  // namespace hopcut
