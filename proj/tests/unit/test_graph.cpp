#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "hopcut/graph.hpp"

using namespace hopcut;

namespace {

Graph k3() { return Graph(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}); }

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("generate_dense_random: density 1 forces completeness") {
  const Graph g = generate_dense_random(3, 1.0, false, 42);
  CHECK(g.n() == 3);
  CHECK(g.edges().size() == 3);
  for (const auto& e : g.edges()) CHECK(e.w == 1);
}

TEST_CASE("generate_dense_random: single node has no pairs") {
  CHECK(generate_dense_random(1, 0.5, false, 9).edges().empty());
}

TEST_CASE("generate_dense_random: edge counts follow binomial statistics") {
  // n = 60, density 0.5: 1770 pairs, mean 885, sd sqrt(1770 * 0.25) = 21.04
  const double mean = 885.0;
  const double sd = std::sqrt(1770.0 * 0.25);
  const Graph g = generate_dense_random(60, 0.5, false, 7);
  CHECK(std::abs(static_cast<double>(g.edges().size()) - mean) <= 3.0 * sd);

  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    total += static_cast<double>(
        generate_dense_random(60, 0.5, false, seed).edges().size());
  }
  CHECK(std::abs(total / 100.0 - mean) <= 3.0 * sd / 10.0);
}

TEST_CASE("generate_dense_random: deterministic per seed, no duplicates") {
  const Graph a = generate_dense_random(40, 0.3, true, 123);
  const Graph b = generate_dense_random(40, 0.3, true, 123);
  REQUIRE(a.edges().size() == b.edges().size());
  for (std::size_t k = 0; k < a.edges().size(); ++k) {
    CHECK(a.edges()[k].i == b.edges()[k].i);
    CHECK(a.edges()[k].j == b.edges()[k].j);
    CHECK(a.edges()[k].w == b.edges()[k].w);
  }
  for (std::size_t k = 1; k < a.edges().size(); ++k) {
    const bool distinct = a.edges()[k - 1].i != a.edges()[k].i ||
                          a.edges()[k - 1].j != a.edges()[k].j;
    CHECK(distinct);
  }
}

TEST_CASE("generate_dense_random: invalid arguments") {
  CHECK_THROWS_AS(generate_dense_random(0, 0.5, false, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_dense_random(5, 0.0, false, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_dense_random(5, 1.5, false, 1), std::invalid_argument);
}

TEST_CASE("graph invariants: self loops, duplicates, range") {
  CHECK_THROWS_AS(Graph(3, {{1, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1, 1}, {1, 0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3, 1}}), std::invalid_argument);
  // reversed orientation is canonicalized, not rejected
  const Graph g(3, {{2, 0, 5}});
  CHECK(g.edges()[0].i == 0);
  CHECK(g.edges()[0].j == 2);
}

TEST_CASE("graph_to_weights: negated adjacency") {
  const WeightMatrix w = graph_to_weights(k3());
  for (int i = 0; i < 3; ++i) {
    CHECK(w.at(i, i) == 0.0);
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(w.at(i, j) == -1.0);
  }

  const WeightMatrix empty = graph_to_weights(Graph(4, {}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(empty.at(i, j) == 0.0);

  const WeightMatrix single = graph_to_weights(Graph(2, {{0, 1, 3}}));
  CHECK(single.at(0, 1) == -3.0);
  CHECK(single.at(1, 0) == -3.0);
}

TEST_CASE("cut_value examples") {
  CHECK(cut_value(k3(), {1.0, -1.0, -1.0}) == 2);
  CHECK(cut_value(k3(), {1.0, 1.0, 1.0}) == 0);
  CHECK(cut_value(k3(), {-1.0, -1.0, -1.0}) == 0);
  CHECK(cut_value(Graph(2, {{0, 1, 1}}), {1.0, -1.0}) == 1);
  CHECK_THROWS_AS(cut_value(k3(), {1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("hopfield_energy examples") {
  const WeightMatrix w = graph_to_weights(k3());
  CHECK(hopfield_energy(w, {1.0, -1.0, -1.0}) == doctest::Approx(-0.5));

  const WeightMatrix zero(3);
  CHECK(hopfield_energy(zero, {1.0, -1.0, 1.0}) == 0.0);
  const std::vector<double> theta{1.0, 1.0, 1.0};
  CHECK(hopfield_energy(zero, {1.0, 1.0, 1.0}, theta) == doctest::Approx(3.0));

  CHECK_THROWS_AS(hopfield_energy(w, {1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("cut_from_energy examples") {
  const WeightMatrix w = graph_to_weights(k3());
  CHECK(cut_offset(w) == doctest::Approx(1.5));
  CHECK(cut_from_energy(w, -0.5) == doctest::Approx(2.0));

  const WeightMatrix single = graph_to_weights(Graph(2, {{0, 1, 1}}));
  CHECK(cut_offset(single) == doctest::Approx(0.5));
  CHECK(cut_from_energy(single, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("cut/energy identity over random graphs and states") {
  // >= 1e4 (graph, state) pairs
  Rng rng(2024);
  for (int gi = 0; gi < 20; ++gi) {
    const Graph g =
        generate_dense_random(6 + gi, 0.6, gi % 2 == 1, 1000 + gi);
    const WeightMatrix w = graph_to_weights(g);
    for (int s = 0; s < 550; ++s) {
      const SpinVector x = random_spins(g.n(), rng);
      const double via_energy = cut_from_energy(w, hopfield_energy(w, x));
      CHECK(std::abs(via_energy - static_cast<double>(cut_value(g, x))) <=
            1e-9);
    }
  }
}

TEST_CASE("cut bounds and global spin-flip symmetry") {
  Rng rng(5);
  for (int gi = 0; gi < 10; ++gi) {
    const Graph g = generate_dense_random(20, 0.5, true, 300 + gi);
    const WeightMatrix w = graph_to_weights(g);
    for (int s = 0; s < 50; ++s) {
      SpinVector x = random_spins(g.n(), rng);
      const long long c = cut_value(g, x);
      CHECK(c >= 0);
      CHECK(c <= g.positive_weight());
      SpinVector mirrored(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) mirrored[k] = -x[k];
      CHECK(cut_value(g, mirrored) == c);
      CHECK(hopfield_energy(w, mirrored) ==
            doctest::Approx(hopfield_energy(w, x)));
    }
  }
}

TEST_CASE("is_bipolar") {
  CHECK(is_bipolar({1.0, -1.0, 1.0}));
  CHECK_FALSE(is_bipolar({1.0, 0.5}));
}

}  // TEST_SUITE
