#include "doctest.h"

#include <stdexcept>

#include <numeric>
#include <sstream>

#include "hopcut/hnn.hpp"
#include "hopcut/oracle.hpp"

using namespace hopcut;

namespace {

Graph k3() { return Graph(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}); }

// reference sweep that snapshots the state once per batch; used to pin down
// the commit semantics of the production sweep
int snapshot_sweep(HnnState& state, const UpdatePlan& plan,
                   std::span<const int> order, std::span<const double> noise,
                   double theta, ThresholdRule rule, const WeightMatrix& w) {
  const int n = w.n();
  int flips = 0;
  for (int start = 0; start < n; start += plan.batch_size) {
    const int count = std::min(plan.batch_size, n - start);
    const SpinVector snapshot = state.v;
    for (int k = 0; k < count; ++k) {
      const int node = order[start + k];
      double u = 0.0;
      for (int j = 0; j < n; ++j) u += w.at(node, j) * snapshot[j];
      const double next =
          apply_threshold(u + noise[start + k], theta, snapshot[node], rule);
      if (next != state.v[node]) ++flips;
      state.v[node] = next;
    }
  }
  ++state.cycle;
  return flips;
}

}  // namespace

TEST_SUITE("hnn") {

TEST_CASE("local_fields examples") {
  const WeightMatrix w = graph_to_weights(k3());
  const SpinVector all_up{1.0, 1.0, 1.0};
  const int node0[] = {0};
  double out[1];
  local_fields(w, all_up, node0, out);
  CHECK(out[0] == doctest::Approx(-2.0));

  const WeightMatrix zero(3);
  const auto fields = local_fields(zero, all_up);
  for (double u : fields) CHECK(u == 0.0);

  const WeightMatrix single = graph_to_weights(Graph(2, {{0, 1, 1}}));
  const SpinVector v{1.0, -1.0};
  const auto u = local_fields(single, v);
  CHECK(u[0] == doctest::Approx(1.0));  // (-1) * (-1)

  const int bad[] = {7};
  double tmp[1];
  CHECK_THROWS_AS(local_fields(w, all_up, bad, tmp), std::invalid_argument);
}

TEST_CASE("apply_threshold: literal boundary is inclusive") {
  CHECK(apply_threshold(0.0, 0.0, -1.0, ThresholdRule::Literal) == 1.0);
  CHECK(apply_threshold(-0.1, 0.0, 1.0, ThresholdRule::Literal) == -1.0);
  CHECK(apply_threshold(2.0, 1.0, -1.0, ThresholdRule::Literal) == 1.0);
  CHECK(apply_threshold(0.5, 1.0, 1.0, ThresholdRule::Literal) == -1.0);
}

TEST_CASE("apply_threshold: hysteresis needs the margin to flip") {
  CHECK(apply_threshold(0.5, 1.0, -1.0, ThresholdRule::Hysteresis) == -1.0);
  CHECK(apply_threshold(1.5, 1.0, -1.0, ThresholdRule::Hysteresis) == 1.0);
  CHECK(apply_threshold(-1.5, 1.0, 1.0, ThresholdRule::Hysteresis) == -1.0);
  CHECK(apply_threshold(-0.5, 1.0, 1.0, ThresholdRule::Hysteresis) == 1.0);
  // at theta = 0 this is the sign rule with the opposite boundary convention
  CHECK(apply_threshold(0.0, 0.0, 1.0, ThresholdRule::Hysteresis) == -1.0);
}

TEST_CASE("sweep on the triangle reaches the optimum after node 0") {
  const Graph g = k3();
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend backend(w);
  HnnState state{{1.0, 1.0, 1.0}, 0};
  std::vector<int> order{0, 1, 2};
  std::vector<double> noise(3, 0.0);
  sweep(state, {1, UpdateOrder::FixedIndex}, order, noise, 0.0,
        ThresholdRule::Literal, backend);
  // u_0 = -2 < 0 flips node 0; nodes 1 and 2 then sit at u = 0 and stay up
  CHECK(state.v == SpinVector{-1.0, 1.0, 1.0});
  CHECK(cut_value(g, state.v) == 2);
  CHECK(state.cycle == 1);
}

TEST_CASE("batch_size = n computes every field from the old state") {
  Rng rng(31);
  const Graph g = generate_dense_random(24, 0.5, false, 77);
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend backend(w);
  for (int rep = 0; rep < 20; ++rep) {
    const SpinVector v0 = random_spins(g.n(), rng);
    std::vector<int> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    const auto noise = sample_noise(1.0, g.n(), rng);

    HnnState fast{v0, 0};
    sweep(fast, {g.n(), UpdateOrder::FixedIndex}, order, noise, 0.0,
          ThresholdRule::Literal, backend);

    // synchronous reference: all fields from v0
    const auto u = local_fields(w, v0);
    for (int i = 0; i < g.n(); ++i) {
      CHECK(fast.v[i] ==
            apply_threshold(u[i] + noise[i], 0.0, v0[i], ThresholdRule::Literal));
    }
  }
}

TEST_CASE("batch commit semantics match the snapshot reference") {
  Rng rng(32);
  const Graph g = generate_dense_random(30, 0.5, false, 78);
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend backend(w);
  for (int batch : {1, 3, 7, 10, 30}) {
    HnnState a{random_spins(g.n(), rng), 0};
    HnnState b = a;
    std::vector<int> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, rng);
    const auto noise = sample_noise(2.0, g.n(), rng);
    const UpdatePlan plan{batch, UpdateOrder::FixedIndex};
    const int fa = sweep(a, plan, order, noise, 0.3, ThresholdRule::Literal,
                         backend);
    const int fb = snapshot_sweep(b, plan, order, noise, 0.3,
                                  ThresholdRule::Literal, w);
    CHECK(fa == fb);
    CHECK(a.v == b.v);
  }
}

TEST_CASE("sweep validates its inputs") {
  const WeightMatrix w = graph_to_weights(k3());
  IdealBackend backend(w);
  HnnState state{{1.0, 1.0, 1.0}, 0};
  std::vector<double> noise(3, 0.0);
  std::vector<int> not_perm{0, 0, 1};
  CHECK_THROWS_AS(sweep(state, {1, UpdateOrder::FixedIndex}, not_perm, noise,
                        0.0, ThresholdRule::Literal, backend),
                  std::invalid_argument);
  std::vector<int> order{0, 1, 2};
  CHECK_THROWS_AS(sweep(state, {4, UpdateOrder::FixedIndex}, order, noise, 0.0,
                        ThresholdRule::Literal, backend),
                  std::invalid_argument);
}

TEST_CASE("noiseless descent: energy non-increasing, fixed point reached") {
  Rng rng(41);
  int graphs = 0;
  for (int n : {8, 16, 24, 32}) {
    for (int rep = 0; rep < 5; ++rep, ++graphs) {
      const Graph g = generate_dense_random(n, 0.5, false, 500 + graphs);
      const WeightMatrix w = graph_to_weights(g);
      IdealBackend backend(w);
      HnnState state{random_spins(n, rng), 0};
      double prev = hopfield_energy(w, state.v);
      bool fixed = false;
      for (int t = 0; t < 10 * n && !fixed; ++t) {
        const int flips = sweep(state, {1, UpdateOrder::FixedIndex}, 0.0, 0.0,
                                ThresholdRule::Literal, rng, backend);
        const double e = hopfield_energy(w, state.v);
        CHECK(e <= prev + 1e-12);
        prev = e;
        fixed = flips == 0;
      }
      CHECK(fixed);
    }
  }
}

TEST_CASE("run_anneal: T = 0 records only the initial point") {
  const WeightMatrix w = graph_to_weights(k3());
  IdealBackend backend(w);
  const AnnealTrace t =
      run_anneal(w, {1, UpdateOrder::RandomPermutation}, NoiseSchedule::none(),
                 ThresholdSchedule::zero(), ThresholdRule::Literal, 0, 5,
                 backend);
  CHECK(t.energy.size() == 1);
  CHECK(t.cut.size() == 1);
  CHECK(t.best_sweep == 0);
  CHECK(t.best_cut == t.cut[0]);
}

TEST_CASE("run_anneal on the triangle reaches cut 2 and stays") {
  // every one-flip neighbour of a triangle optimum has equal or lower cut and
  // the noiseless rule never takes strictly worse states
  const Graph g = k3();
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend backend(w);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AnnealTrace t = run_anneal(w, {1, UpdateOrder::RandomPermutation},
                                     NoiseSchedule::none(),
                                     ThresholdSchedule::zero(),
                                     ThresholdRule::Literal, 30, seed, backend);
    CHECK(t.best_cut == 2);
    bool settled = false;
    for (std::size_t s = 0; s < t.cut.size(); ++s) {
      if (settled) CHECK(t.cut[s] == 2);
      if (t.cut[s] == 2) settled = true;
    }
    CHECK(settled);
    CHECK(t.final_cut() == 2);
  }
}

TEST_CASE("run_anneal: identical inputs give bit-identical traces") {
  const Graph g = generate_dense_random(20, 0.5, false, 11);
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend b1(w), b2(w);
  const auto t1 =
      run_anneal(w, {3, UpdateOrder::RandomPermutation},
                 NoiseSchedule::quad_superlinear(5.0),
                 ThresholdSchedule::linear_ramp(1.0), ThresholdRule::Hysteresis,
                 100, 42, b1);
  const auto t2 =
      run_anneal(w, {3, UpdateOrder::RandomPermutation},
                 NoiseSchedule::quad_superlinear(5.0),
                 ThresholdSchedule::linear_ramp(1.0), ThresholdRule::Hysteresis,
                 100, 42, b2);
  CHECK(t1.energy == t2.energy);
  CHECK(t1.cut == t2.cut);
  CHECK(t1.final_state == t2.final_state);
  CHECK(t1.best_cut == t2.best_cut);
  CHECK(t1.best_sweep == t2.best_sweep);
}

TEST_CASE("recorded energy and cut satisfy the offset identity exactly") {
  const Graph g = generate_dense_random(24, 0.5, true, 13);
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend backend(w);
  const double offset = cut_offset(w);
  const auto t = run_anneal(w, {4, UpdateOrder::RandomPermutation},
                            NoiseSchedule::fixed(2.0),
                            ThresholdSchedule::linear_ramp(0.5),
                            ThresholdRule::Literal, 200, 7, backend);
  CHECK(t.cut.size() == 201);
  for (std::size_t s = 0; s < t.cut.size(); ++s) {
    CHECK(offset - t.energy[s] == doctest::Approx(t.cut[s]).epsilon(1e-12));
  }
  long long best = t.cut.front();
  for (long long c : t.cut) best = std::max(best, c);
  CHECK(best == t.best_cut);
  CHECK(t.cut[t.best_sweep] == t.best_cut);
}

TEST_CASE("global spin-flip symmetry with mirrored noise") {
  // ties u + eta = 0 have probability zero under continuous noise, so the
  // inclusive boundary of the literal rule never fires and the mirrored run
  // tracks exactly
  Rng rng(55);
  const Graph g = generate_dense_random(18, 0.5, false, 21);
  const WeightMatrix w = graph_to_weights(g);
  IdealBackend backend(w);
  const SpinVector v0 = random_spins(g.n(), rng);
  SpinVector v0m(v0.size());
  for (std::size_t k = 0; k < v0.size(); ++k) v0m[k] = -v0[k];

  HnnState a{v0, 0}, b{v0m, 0};
  std::vector<int> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  for (int t = 0; t < 50; ++t) {
    shuffle(order, rng);
    const auto eta = sample_noise(1.7, g.n(), rng);
    std::vector<double> mirrored(eta.size());
    for (std::size_t k = 0; k < eta.size(); ++k) mirrored[k] = -eta[k];
    sweep(a, {2, UpdateOrder::FixedIndex}, order, eta, 0.0,
          ThresholdRule::Literal, backend);
    sweep(b, {2, UpdateOrder::FixedIndex}, order, mirrored, 0.0,
          ThresholdRule::Literal, backend);
    for (int i = 0; i < g.n(); ++i) CHECK(b.v[i] == -a.v[i]);
  }
}

TEST_CASE("trace CSV format") {
  AnnealTrace t;
  t.energy = {1.5, -0.5};
  t.cut = {0, 2};
  std::ostringstream out;
  write_trace_csv(t, out);
  CHECK(out.str() == "sweep,energy,cut\n0,1.5,0\n1,-0.5,2\n");
}

}  // TEST_SUITE
