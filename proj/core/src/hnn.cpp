#include "hopcut/hnn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace hopcut {

void local_fields(const WeightMatrix& w, const SpinVector& v,
                  std::span<const int> nodes, std::span<double> out) {
  const int n = w.n();
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("local_fields: state length mismatch");
  if (out.size() != nodes.size())
    throw std::invalid_argument("local_fields: output length mismatch");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int i = nodes[k];
    if (i < 0 || i >= n)
      throw std::invalid_argument("local_fields: node index out of range");
    const double* row = w.row(i);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] * v[j];
    out[k] = acc;
  }
}

std::vector<double> local_fields(const WeightMatrix& w, const SpinVector& v) {
  std::vector<int> nodes(w.n());
  std::iota(nodes.begin(), nodes.end(), 0);
  std::vector<double> out(w.n());
  local_fields(w, v, nodes, out);
  return out;
}

void IdealBackend::local_fields(const SpinVector& v, std::span<const int> nodes,
                                std::span<double> out) {
  hopcut::local_fields(*w_, v, nodes, out);
}

double apply_threshold(double u_plus_eta, double theta, double current,
                       ThresholdRule rule) {
  if (rule == ThresholdRule::Literal) {
    return u_plus_eta >= theta ? 1.0 : -1.0;
  }
  return current * u_plus_eta <= -theta ? -current : current;
}

int sweep(HnnState& state, const UpdatePlan& plan, std::span<const int> order,
          std::span<const double> noise, double theta, ThresholdRule rule,
          FieldBackend& backend) {
  const int n = backend.n();
  if (static_cast<int>(state.v.size()) != n)
    throw std::invalid_argument("sweep: state length mismatch");
  if (plan.batch_size < 1 || plan.batch_size > n)
    throw std::invalid_argument("sweep: batch_size must be in [1, n]");
  if (static_cast<int>(order.size()) != n ||
      static_cast<int>(noise.size()) != n)
    throw std::invalid_argument("sweep: order/noise must cover every node once");
  {
    thread_local std::vector<char> seen;
    seen.assign(n, 0);
    for (int i : order) {
      if (i < 0 || i >= n || seen[i])
        throw std::invalid_argument("sweep: order is not a permutation");
      seen[i] = 1;
    }
  }

  thread_local std::vector<double> fields;
  int flips = 0;
  for (int start = 0; start < n; start += plan.batch_size) {
    const int count = std::min(plan.batch_size, n - start);
    fields.resize(count);
    const std::span<const int> batch = order.subspan(start, count);
    // fields for the whole batch come from the state committed so far; the
    // batch's own writes land after, so members do not see each other
    backend.local_fields(state.v, batch, fields);
    for (int k = 0; k < count; ++k) {
      const int node = batch[k];
      const double next = apply_threshold(fields[k] + noise[start + k], theta,
                                          state.v[node], rule);
      if (next != state.v[node]) {
        state.v[node] = next;
        ++flips;
      }
    }
  }
  ++state.cycle;
  return flips;
}

int sweep(HnnState& state, const UpdatePlan& plan, double noise_amplitude,
          double theta, ThresholdRule rule, Rng& rng, FieldBackend& backend) {
  const int n = backend.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (plan.order == UpdateOrder::RandomPermutation) shuffle(order, rng);
  std::vector<double> noise = sample_noise(noise_amplitude, n, rng);
  return sweep(state, plan, order, noise, theta, rule, backend);
}

AnnealTrace run_anneal(const WeightMatrix& w, const UpdatePlan& plan,
                       const NoiseSchedule& noise,
                       const ThresholdSchedule& threshold, ThresholdRule rule,
                       int sweeps, std::uint64_t seed, FieldBackend& backend) {
  const int n = w.n();
  if (backend.n() != n)
    throw std::invalid_argument("run_anneal: backend dimension mismatch");
  if (sweeps < 0) throw std::invalid_argument("run_anneal: sweeps must be >= 0");

  Rng rng(seed);
  HnnState state{random_spins(n, rng), 0};

  // nonzero couplings as an edge list; per-sweep cut evaluation is O(edges)
  // and the recorded energy is tied to it through the exact offset identity
  struct CutEdge {
    int i, j;
    double a;  // adjacency weight, a = -w
  };
  std::vector<CutEdge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w.at(i, j) != 0.0) edges.push_back({i, j, -w.at(i, j)});
  const double offset = cut_offset(w);
  auto cut_of = [&edges](const SpinVector& x) {
    double c = 0.0;
    for (const auto& e : edges)
      if (x[e.i] != x[e.j]) c += e.a;
    return c;
  };

  AnnealTrace trace;
  trace.seed = seed;
  trace.energy.reserve(sweeps + 1);
  trace.cut.reserve(sweeps + 1);

  const double cut0 = cut_of(state.v);
  trace.energy.push_back(offset - cut0);
  trace.cut.push_back(std::llround(cut0));
  trace.best_cut = trace.cut.front();
  trace.best_sweep = 0;
  trace.best_state = state.v;

  std::vector<int> order(n);
  std::vector<double> eta(n);
  for (int t = 1; t <= sweeps; ++t) {
    const double amp = amplitude(noise, t, sweeps);
    const double theta = threshold_at(threshold, t, sweeps);
    std::iota(order.begin(), order.end(), 0);
    if (plan.order == UpdateOrder::RandomPermutation) shuffle(order, rng);
    sample_noise(amp, rng, eta);
    sweep(state, plan, order, eta, theta, rule, backend);

    const double c = cut_of(state.v);
    trace.energy.push_back(offset - c);
    trace.cut.push_back(std::llround(c));
    if (trace.cut.back() > trace.best_cut) {
      trace.best_cut = trace.cut.back();
      trace.best_sweep = t;
      trace.best_state = state.v;
    }
  }
  trace.final_state = state.v;
  return trace;
}

void write_trace_csv(const AnnealTrace& trace, std::ostream& out) {
  out << "sweep,energy,cut\n";
  char buf[64];
  for (std::size_t t = 0; t < trace.cut.size(); ++t) {
    std::snprintf(buf, sizeof(buf), "%.10g", trace.energy[t]);
    out << t << "," << buf << "," << trace.cut[t] << "\n";
  }
}

}  // namespace hopcut
