#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "stat_util.hpp"
#include "treembed/embed.hpp"
#include "treembed/pipeline.hpp"

using namespace treembed;

namespace {

// Independent check of a full-forest embedding: injective, edge-preserving.
bool embeds_forest(const Forest& f, const Graph& g, const Embedding& phi) {
  std::vector<char> hit(g.n, 0);
  for (int v = 0; v < f.n; ++v) {
    if (!f.present[v]) continue;
    const int hv = phi.map[v];
    if (hv < 0 || hv >= g.n) return false;
    if (hit[hv]++) return false;
    for (int u : f.adjacency[v]) {
      if (u > v && !g.has_edge(phi.map[u], phi.map[v])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("greedy embedding into a complete host always succeeds", "[embed]") {
  for (int n : {2, 5, 17, 60}) {
    const Tree t = random_tree(n, 31 + n);
    const Forest f = Forest::whole(t);
    const Graph host = testutil::complete_graph(n);
    const GreedyResult res = greedy_embed(f, host);
    REQUIRE(res.ok());
    CHECK(embeds_forest(f, host, *res.embedding));
    CHECK(verify_embedding(t, host, *res.embedding));
  }
}

TEST_CASE("greedy embedding is deterministic", "[embed]") {
  const Tree t = random_tree(40, 7);
  const Forest f = Forest::whole(t);
  const Graph host = gnp(80, 0.5, 12);
  const GreedyResult a = greedy_embed(f, host);
  const GreedyResult b = greedy_embed(f, host);
  REQUIRE(a.ok() == b.ok());
  if (a.ok()) CHECK(a.embedding->map == b.embedding->map);
}

TEST_CASE("greedy embedding fails loudly where no embedding exists", "[embed]") {
  // a star K_{1,5} cannot embed into a path host: the center needs 5
  // distinct neighbors but path degrees are <= 2
  const Tree star = testutil::star_tree(6);
  const Forest f = Forest::whole(star);
  const Graph host = testutil::path_graph(6);
  const GreedyResult res = greedy_embed(f, host);
  REQUIRE_FALSE(res.ok());
  CHECK(res.stuck_at == 0);  // the center blocks

  // empty host with enough vertices: the first edge blocks
  const Tree t = random_tree(8, 2);
  const GreedyResult res2 = greedy_embed(Forest::whole(t), testutil::empty_graph(8));
  REQUIRE_FALSE(res2.ok());
  CHECK(res2.stuck_at >= 0);
}

TEST_CASE("greedy embedding honors preplaced vertices", "[embed]") {
  // pin vertex 0 of a path tree onto host vertex 3 of a cycle
  const Tree p5 = testutil::path_tree(5);
  const Graph host = testutil::cycle_graph(8);
  Embedding pre = Embedding::empty(5, 8);
  pre.assign(0, 3);
  const GreedyResult res = greedy_embed(Forest::whole(p5), host, pre);
  REQUIRE(res.ok());
  CHECK(res.embedding->map[0] == 3);
  CHECK(embeds_forest(Forest::whole(p5), host, *res.embedding));

  // preplacement that violates a tree edge is rejected at the edge check
  Embedding bad = Embedding::empty(5, 8);
  bad.assign(0, 0);
  bad.assign(1, 4);  // not adjacent on the cycle
  const GreedyResult res2 = greedy_embed(Forest::whole(p5), host, bad);
  CHECK_FALSE(res2.ok());
}

TEST_CASE("greedy embedding validates sizes", "[embed]") {
  const Tree t = testutil::path_tree(4);
  const Graph host = testutil::complete_graph(3);  // too small
  CHECK_THROWS_AS(greedy_embed(Forest::whole(t), host), std::invalid_argument);

  Embedding wrong = Embedding::empty(5, 10);
  CHECK_THROWS_AS(greedy_embed(Forest::whole(t), testutil::complete_graph(10), wrong),
                  std::invalid_argument);
}

TEST_CASE("forests with deleted vertices embed component by component", "[embed]") {
  // remove the middle of a path: two components must land injectively
  const Tree p7 = testutil::path_tree(7);
  const Forest f = Forest::without_vertices(p7, {3});
  CHECK(f.vertex_count == 6);
  const Graph host = testutil::complete_graph(7);
  const GreedyResult res = greedy_embed(f, host);
  REQUIRE(res.ok());
  CHECK(embeds_forest(f, host, *res.embedding));
  CHECK(res.embedding->map[3] == -1);  // absent vertices stay unmapped

  CHECK_THROWS_AS(Forest::without_vertices(p7, {9}), std::invalid_argument);
}

TEST_CASE("verify_embedding is a strict total check", "[embed]") {
  const Tree t = random_tree(12, 9);
  const Graph host = testutil::complete_graph(12);
  const GreedyResult res = greedy_embed(Forest::whole(t), host);
  REQUIRE(res.ok());
  Embedding phi = *res.embedding;
  CHECK(verify_embedding(t, host, phi));

  Embedding dup = phi;
  dup.map[1] = dup.map[0];  // collision
  CHECK_FALSE(verify_embedding(t, host, dup));

  Embedding partial = phi;
  partial.map[2] = -1;  // not total
  CHECK_FALSE(verify_embedding(t, host, partial));

  // non-edge: embed the path 0-1-2 across an empty host
  const Tree p3 = testutil::path_tree(3);
  Embedding raw = Embedding::empty(3, 3);
  raw.assign(0, 0);
  raw.assign(1, 1);
  raw.assign(2, 2);
  CHECK_FALSE(verify_embedding(p3, testutil::empty_graph(3), raw));
  CHECK(verify_embedding(p3, testutil::path_graph(3), raw));
}

TEST_CASE("greedy embedding respects sparse random hosts when dense enough", "[embed]") {
  // bounded-degree tree into a dense random host: succeeds for most seeds;
  // verify every success independently
  int successes = 0;
  for (int s = 0; s < 10; ++s) {
    const Tree t = random_bounded_degree_tree(50, 4, 100 + s);
    const Graph host = gnp(100, 0.6, 200 + s);
    const GreedyResult res = greedy_embed(Forest::whole(t), host);
    if (res.ok()) {
      ++successes;
      REQUIRE(embeds_forest(Forest::whole(t), host, *res.embedding));
    }
  }
  CHECK(successes >= 8);
}
