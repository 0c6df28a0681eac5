#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "stat_util.hpp"
#include "treembed/paths.hpp"

using namespace treembed;

namespace {

// Host on n0 sources + (k-1)*n0 layer vertices + n0 targets with every
// stage-crossing pair present with probability q. Vertex ids: sources
// 0..n0-1, layer m occupies n0*(m+1)..n0*(m+2)-1, targets last. The host
// lives behind a unique_ptr so inst.host survives moves of the fixture.
struct LayeredFixture {
  std::unique_ptr<Graph> host = std::make_unique<Graph>();
  PathInstance inst;
};

LayeredFixture layered_instance(int n0, int k, double q, std::uint64_t seed) {
  LayeredFixture f;
  const int n = n0 * (k + 1);
  f.host->n = n;
  f.host->adjacency.resize(n);
  Rng rng = Rng::from_seed(seed).split("layered");
  // ascending (m, a, b) insertion keeps adjacency rows sorted
  for (int m = 0; m < k; ++m) {
    for (int a = 0; a < n0; ++a) {
      for (int b = 0; b < n0; ++b) {
        if (rng.bernoulli(q)) f.host->add_edge_unchecked(m * n0 + a, (m + 1) * n0 + b);
      }
    }
  }
  f.inst.k = k;
  f.inst.host = f.host.get();
  for (int i = 0; i < n0; ++i) f.inst.pairs.emplace_back(i, k * n0 + i);
  f.inst.layers.resize(k - 1);
  for (int m = 0; m < k - 1; ++m) {
    for (int i = 0; i < n0; ++i) f.inst.layers[m].push_back((m + 1) * n0 + i);
  }
  return f;
}

// Fixed wiring: build the layered host from an explicit edge list given in
// (stage, from_slot, to_slot) coordinates, ascending lexicographically.
LayeredFixture wired_instance(int n0, int k,
                              const std::vector<std::tuple<int, int, int>>& arcs) {
  LayeredFixture f = layered_instance(n0, k, 0.0, 0);
  for (const auto& [m, a, b] : arcs) {
    f.host->add_edge_unchecked(m * n0 + a, (m + 1) * n0 + b);
  }
  return f;
}

}  // namespace

TEST_CASE("empty instance succeeds with an empty solution", "[paths]") {
  const Graph host = testutil::complete_graph(4);
  PathInstance inst;
  inst.k = 3;
  inst.host = &host;
  inst.layers.resize(2);
  const PathResult res = insert_paths(inst);
  REQUIRE(res.ok());
  CHECK(res.solution->paths.empty());
  CHECK(res.failed_phase == PathPhase::none);
}

TEST_CASE("single path routes through present edges and proves absent ones", "[paths]") {
  // s=0, layers {1},{2}, t=3: the only candidate path is 0-1-2-3
  LayeredFixture f = wired_instance(1, 3, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  const PathResult res = insert_paths(f.inst);
  REQUIRE(res.ok());
  CHECK(res.solution->paths == std::vector<std::vector<int>>{{0, 1, 2, 3}});
  CHECK(validate_path_solution(f.inst, *res.solution));

  // drop the middle edge: stage-1 matching cannot exist -> proof
  LayeredFixture g = wired_instance(1, 3, {{0, 0, 0}, {2, 0, 0}});
  const PathResult bad = insert_paths(g.inst);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.failed_phase == PathPhase::matching);
  CHECK(bad.proven_infeasible);
}

TEST_CASE("instance validation rejects malformed inputs", "[paths]") {
  const Graph host = testutil::complete_graph(8);
  PathInstance inst;
  inst.host = &host;
  inst.k = 3;
  inst.pairs = {{0, 1}};
  inst.layers = {{2}, {3}};

  PathInstance bad = inst;
  bad.k = 2;  // layered routing needs k >= 3
  CHECK_THROWS_AS(insert_paths(bad), std::invalid_argument);

  bad = inst;
  bad.host = nullptr;
  CHECK_THROWS_AS(insert_paths(bad), std::invalid_argument);

  bad = inst;
  bad.layers = {{2}};  // wrong layer count
  CHECK_THROWS_AS(insert_paths(bad), std::invalid_argument);

  bad = inst;
  bad.layers = {{2, 4}, {3, 5}};  // layer size != |pairs|
  CHECK_THROWS_AS(insert_paths(bad), std::invalid_argument);

  bad = inst;
  bad.layers = {{2}, {2}};  // reused vertex
  CHECK_THROWS_AS(insert_paths(bad), std::invalid_argument);

  bad = inst;
  bad.layers = {{2}, {99}};  // out of range
  CHECK_THROWS_AS(insert_paths(bad), std::invalid_argument);

  // the exact solver validates through the same gate
  bad = inst;
  bad.k = 2;
  CHECK_THROWS_AS(exact_disjoint_paths(bad), std::invalid_argument);
}

TEST_CASE("validate_path_solution rejects corrupted solutions", "[paths]") {
  LayeredFixture f = layered_instance(3, 3, 1.0, 5);
  const PathResult res = insert_paths(f.inst);
  REQUIRE(res.ok());
  const PathSolution good = *res.solution;
  REQUIRE(validate_path_solution(f.inst, good));

  PathSolution bad = good;
  bad.paths[0].back() = f.inst.pairs[1].second;  // wrong endpoint
  CHECK_FALSE(validate_path_solution(f.inst, bad));

  bad = good;
  bad.paths[1][1] = bad.paths[0][1];  // reused layer vertex
  CHECK_FALSE(validate_path_solution(f.inst, bad));

  bad = good;
  bad.paths[0][1] = f.inst.layers[1][0];  // vertex from the wrong layer
  CHECK_FALSE(validate_path_solution(f.inst, bad));

  bad = good;
  bad.paths[0].pop_back();  // wrong length
  CHECK_FALSE(validate_path_solution(f.inst, bad));

  bad = good;
  bad.paths.pop_back();  // wrong path count
  CHECK_FALSE(validate_path_solution(f.inst, bad));
}

TEST_CASE("forced transposition: matchings exist but cannot compose to identity",
          "[paths]") {
  // Each stage has a unique perfect matching; the middle stage swaps the two
  // slots, so sigma is the transposition (0 1) and no amount of repair can
  // fix it. Heuristic-only must report a repair dead end; the exact
  // fallback must prove infeasibility.
  const std::vector<std::tuple<int, int, int>> arcs = {
      {0, 0, 0}, {0, 1, 1},  // stage 0: identity
      {1, 0, 1}, {1, 1, 0},  // stage 1: swap
      {2, 0, 0}, {2, 1, 1},  // stage 2: identity
  };
  LayeredFixture f = wired_instance(2, 3, arcs);

  PathBudget heuristic_only;
  heuristic_only.exact_threshold = 0;
  heuristic_only.restarts = 3;
  const PathResult h = insert_paths(f.inst, heuristic_only);
  REQUIRE_FALSE(h.ok());
  CHECK(h.failed_phase == PathPhase::repair);
  CHECK_FALSE(h.proven_infeasible);

  const PathResult e = insert_paths(f.inst);  // default budget: exact fallback
  REQUIRE_FALSE(e.ok());
  CHECK(e.failed_phase == PathPhase::repair);
  CHECK(e.proven_infeasible);

  // the brute-force oracle agrees
  CHECK_FALSE(testutil::paths_feasible_brute(f.inst));
  const ExactPathResult ex = exact_disjoint_paths(f.inst);
  CHECK_FALSE(ex.solution.has_value());
  CHECK_FALSE(ex.budget_exhausted);
}

TEST_CASE("zero sweep budget reports budget exhaustion, not infeasibility", "[paths]") {
  const std::vector<std::tuple<int, int, int>> arcs = {
      {0, 0, 0}, {0, 1, 1},
      {1, 0, 1}, {1, 1, 0},
      {2, 0, 0}, {2, 1, 1},
  };
  LayeredFixture f = wired_instance(2, 3, arcs);
  PathBudget starved;
  starved.max_total_sweeps = 0;
  starved.exact_threshold = 0;
  const PathResult res = insert_paths(f.inst, starved);
  REQUIRE_FALSE(res.ok());
  CHECK(res.failed_phase == PathPhase::budget);
  CHECK_FALSE(res.proven_infeasible);
}

TEST_CASE("exact search matches permutation enumeration on random instances", "[paths]") {
  int feasible = 0, infeasible = 0;
  for (int i = 0; i < 200; ++i) {
    Rng r = Rng::from_seed(81000 + i);
    const int n0 = 1 + r.next_int(4);
    const int k = 3 + r.next_int(2);
    const double q = 0.3 + 0.65 * r.next_double();
    LayeredFixture f = layered_instance(n0, k, q, 82000 + i);
    const bool brute = testutil::paths_feasible_brute(f.inst);
    const ExactPathResult ex = exact_disjoint_paths(f.inst);
    REQUIRE_FALSE(ex.budget_exhausted);
    INFO("instance " << i << ": n0=" << n0 << " k=" << k << " q=" << q);
    REQUIRE(ex.solution.has_value() == brute);
    if (brute) {
      ++feasible;
      REQUIRE(validate_path_solution(f.inst, *ex.solution));
    } else {
      ++infeasible;
    }
  }
  CHECK(feasible > 30);
  CHECK(infeasible > 30);
}

TEST_CASE("exact search honors its hard size guards", "[paths]") {
  LayeredFixture f = layered_instance(3, 3, 1.0, 1);
  ExactPathOptions opt;
  opt.max_n0 = 2;
  CHECK_THROWS_AS(exact_disjoint_paths(f.inst, opt), std::invalid_argument);
  opt = {};
  opt.max_k = 2;
  CHECK_THROWS_AS(exact_disjoint_paths(f.inst, opt), std::invalid_argument);
}

TEST_CASE("repair engine solves dense layered instances and validates", "[paths]") {
  for (int i = 0; i < 6; ++i) {
    LayeredFixture f = layered_instance(40, 3, 0.35, 90 + i);
    PathBudget b;
    b.seed = 1000 + i;
    const PathResult res = insert_paths(f.inst, b);
    REQUIRE(res.ok());
    REQUIRE(validate_path_solution(f.inst, *res.solution));
  }
  // a k=4 instance exercises the multi-layer bookkeeping
  LayeredFixture g = layered_instance(28, 4, 0.40, 321);
  const PathResult res = insert_paths(g.inst);
  REQUIRE(res.ok());
  REQUIRE(validate_path_solution(g.inst, *res.solution));
}

TEST_CASE("repair engine never succeeds where exact search proves infeasibility",
          "[paths]") {
  int ok_count = 0, proof_count = 0;
  for (int i = 0; i < 150; ++i) {
    Rng r = Rng::from_seed(83000 + i);
    const int n0 = 2 + r.next_int(3);
    const double q = 0.35 + 0.55 * r.next_double();
    LayeredFixture f = layered_instance(n0, 3, q, 84000 + i);

    PathBudget heuristic_only;
    heuristic_only.exact_threshold = 0;
    heuristic_only.seed = i;
    const PathResult h = insert_paths(f.inst, heuristic_only);
    const bool brute = testutil::paths_feasible_brute(f.inst);
    if (h.ok()) {
      ++ok_count;
      REQUIRE(brute);  // soundness: a returned solution implies feasibility
      REQUIRE(validate_path_solution(f.inst, *h.solution));
    }
    if (!brute) ++proof_count;
  }
  CHECK(ok_count > 40);
  CHECK(proof_count > 50);
}

TEST_CASE("insert_paths is deterministic in the budget seed", "[paths]") {
  LayeredFixture f = layered_instance(30, 3, 0.45, 777);
  PathBudget b;
  b.seed = 5;
  const PathResult r1 = insert_paths(f.inst, b);
  const PathResult r2 = insert_paths(f.inst, b);
  REQUIRE(r1.ok());
  REQUIRE(r2.ok());
  CHECK(r1.solution->paths == r2.solution->paths);
  CHECK(r1.sweeps_used == r2.sweeps_used);
  CHECK(r1.restarts_used == r2.restarts_used);
}

TEST_CASE("sparse instances at the infeasibility edge yield matching proofs", "[paths]") {
  // q far below 1/n0: some stage loses its perfect matching almost surely
  int proofs = 0;
  for (int i = 0; i < 20; ++i) {
    LayeredFixture f = layered_instance(50, 3, 0.008, 500 + i);
    const PathResult res = insert_paths(f.inst);
    if (!res.ok() && res.failed_phase == PathPhase::matching) {
      CHECK(res.proven_infeasible);
      ++proofs;
    }
  }
  CHECK(proofs >= 18);
}
