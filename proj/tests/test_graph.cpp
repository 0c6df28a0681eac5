#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "stat_util.hpp"
#include "treembed/graph.hpp"

using namespace treembed;

TEST_CASE("from_edges validates and sorts adjacency", "[graph]") {
  const Graph g = Graph::from_edges(4, {{2, 3}, {0, 1}, {1, 3}});
  CHECK(g.n == 4);
  CHECK(g.edge_count == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_edge(3, 2));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.degree(3) == 2);
  for (int v = 0; v < g.n; ++v) {
    CHECK(std::is_sorted(g.adjacency[v].begin(), g.adjacency[v].end()));
  }
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {2, 3}});

  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("gnp boundary values", "[graph]") {
  const Graph empty = gnp(50, 0.0, 1);
  CHECK(empty.edge_count == 0);
  const Graph full = gnp(50, 1.0, 1);
  CHECK(full.edge_count == 50u * 49 / 2);
  const Graph tiny = gnp(1, 0.5, 1);
  CHECK(tiny.n == 1);
  CHECK(tiny.edge_count == 0);
  CHECK_THROWS_AS(gnp(10, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(gnp(10, 1.5, 1), std::invalid_argument);
}

TEST_CASE("gnp is deterministic in the seed", "[graph]") {
  const Graph a = gnp(100, 0.07, 42);
  const Graph b = gnp(100, 0.07, 42);
  CHECK(a.edges() == b.edges());
  const Graph c = gnp(100, 0.07, 43);
  CHECK(a.edges() != c.edges());
}

TEST_CASE("dense gnp equals the plain per-pair reference sampler", "[graph]") {
  // Above the sparse/dense threshold the sampler must flip one coin per
  // pair in row-major order; the reference reproduces that bit for bit.
  const Graph lib = gnp(60, 0.5, 77);
  const Graph ref = testutil::gnp_reference(60, 0.5, 77);
  CHECK(lib.edges() == ref.edges());
}

TEST_CASE("sparse gnp edge count concentrates around p*C(n,2)", "[graph]") {
  // n=400, p=0.01: mean ~ 798, sd ~ 28. Average 20 seeds, 5-sigma window.
  const int n = 400;
  const double p = 0.01;
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  double total = 0;
  const int reps = 20;
  for (int s = 0; s < reps; ++s) total += static_cast<double>(gnp(n, p, 900 + s).edge_count);
  const double mean = total / reps;
  const double sigma = std::sqrt(pairs * p * (1 - p) / reps);
  CHECK(std::abs(mean - p * pairs) < 5.0 * sigma);
}

TEST_CASE("sparse gnp has no duplicate or self edges", "[graph]") {
  const Graph g = gnp(200, 0.03, 5);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges()) {
    REQUIRE(u < v);
    REQUIRE(v < g.n);
    REQUIRE(seen.insert({u, v}).second);
  }
  CHECK(seen.size() == g.edge_count);
}

TEST_CASE("two_round_p_prime solves (1-p')^2 = 1-p", "[graph]") {
  CHECK(two_round_p_prime(0.19) == Catch::Approx(0.1).margin(1e-15));
  CHECK(two_round_p_prime(0.0) == 0.0);
  CHECK(two_round_p_prime(1.0) == 1.0);
  for (double p : {0.01, 0.3, 0.777}) {
    const double pp = two_round_p_prime(p);
    CHECK((1 - pp) * (1 - pp) == Catch::Approx(1 - p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(two_round_p_prime(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(two_round_p_prime(1.1), std::invalid_argument);
}

TEST_CASE("gnp_two_round union has the right marginal and structure", "[graph]") {
  const TwoRoundGraph tr = gnp_two_round(80, 0.19, 11);
  CHECK(tr.n() == 80);
  CHECK(tr.p == 0.19);
  CHECK(tr.p_prime == Catch::Approx(0.1).margin(1e-15));

  const Graph u = tr.union_graph();
  // union adjacency is sorted and deduplicated
  for (int v = 0; v < u.n; ++v) {
    CHECK(std::is_sorted(u.adjacency[v].begin(), u.adjacency[v].end()));
    CHECK(std::adjacent_find(u.adjacency[v].begin(), u.adjacency[v].end()) ==
          u.adjacency[v].end());
  }
  // has_edge on the wrapper agrees with the materialized union
  for (int a = 0; a < 80; ++a) {
    for (int b = a + 1; b < 80; ++b) {
      CHECK(tr.has_edge(a, b) == u.has_edge(a, b));
      CHECK(tr.has_edge(a, b) == (tr.g1.has_edge(a, b) || tr.g2.has_edge(a, b)));
    }
  }
}

TEST_CASE("two-round union edge frequency matches p within 5 sigma", "[graph]") {
  // ~10^4 Bernoulli(p) samples across pairs and seeds.
  const int n = 40;
  const double p = 0.19;
  long long edges = 0, pairs = 0;
  for (int s = 0; s < 13; ++s) {
    const TwoRoundGraph tr = gnp_two_round(n, p, 3000 + s);
    edges += static_cast<long long>(tr.union_graph().edge_count);
    pairs += static_cast<long long>(n) * (n - 1) / 2;
  }
  const double rate = static_cast<double>(edges) / static_cast<double>(pairs);
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(pairs));
  CHECK(std::abs(rate - p) < 5.0 * sigma);
}

TEST_CASE("bipartite_gnp basic properties", "[graph]") {
  const BipartiteGraph g = bipartite_gnp(30, 50, 0.2, 9);
  CHECK(g.left_size() == 30);
  CHECK(g.right_size() == 50);
  std::size_t count = 0;
  for (int l = 0; l < 30; ++l) {
    CHECK(std::is_sorted(g.adj[l].begin(), g.adj[l].end()));
    count += g.adj[l].size();
    for (int r : g.adj[l]) {
      REQUIRE(r >= 0);
      REQUIRE(r < 50);
      CHECK(g.has_edge(l, r));
    }
  }
  CHECK(count == g.edge_count);

  const BipartiteGraph full = bipartite_gnp(5, 7, 1.0, 1);
  CHECK(full.edge_count == 35);
  const BipartiteGraph none = bipartite_gnp(5, 7, 0.0, 1);
  CHECK(none.edge_count == 0);
  const BipartiteGraph degenerate = bipartite_gnp(0, 7, 0.5, 1);
  CHECK(degenerate.edge_count == 0);
}

TEST_CASE("bipartite_gnp edge rate matches p within 5 sigma", "[graph]") {
  const BipartiteGraph g = bipartite_gnp(100, 120, 0.3, 21);
  const double pairs = 100.0 * 120.0;
  const double rate = static_cast<double>(g.edge_count) / pairs;
  const double sigma = std::sqrt(0.3 * 0.7 / pairs);
  CHECK(std::abs(rate - 0.3) < 5.0 * sigma);
}

TEST_CASE("add_edge_unchecked maintains counts for manual construction", "[graph]") {
  Graph g;
  g.n = 4;
  g.adjacency.resize(4);
  g.add_edge_unchecked(0, 2);
  g.add_edge_unchecked(0, 3);
  CHECK(g.edge_count == 2);
  CHECK(g.degree(0) == 2);
  CHECK(g.has_edge(0, 2));  // ascending insertion keeps rows sorted
  CHECK(g.has_edge(3, 0));
}
