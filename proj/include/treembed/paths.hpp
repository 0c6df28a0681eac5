#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "treembed/graph.hpp"
#include "treembed/matching.hpp"
#include "treembed/rng.hpp"

namespace treembed {

// Insert n0 vertex-disjoint paths of length k (k edges) between prescribed
// endpoint pairs, routing path i through one fresh vertex of each layer, in
// layer order. The layers partition the available free vertices into k-1
// sets of size n0 = |pairs|.
struct PathInstance {
  std::vector<std::pair<int, int>> pairs;  // (s_i, t_i) host vertex ids
  std::vector<std::vector<int>> layers;    // k-1 layers, each of size |pairs|
  int k = 0;                               // path length in edges, >= 3
  const Graph* host = nullptr;             // non-owning; must outlive calls
};

struct PathSolution {
  // paths[i] = s_i, one vertex from each layer in order, t_i  (k+1 entries).
  std::vector<std::vector<int>> paths;
};

enum class PathPhase {
  none,
  matching,  // some consecutive-stage perfect matching does not exist (infeasibility proof)
  repair,    // every repair attempt hit a dead end (or exact search proved infeasibility)
  budget,    // legal moves remained but sweep/restart limits ran out
};

inline const char* to_string(PathPhase p) {
  switch (p) {
    case PathPhase::none: return "none";
    case PathPhase::matching: return "matching";
    case PathPhase::repair: return "repair";
    case PathPhase::budget: return "budget";
  }
  return "?";
}

struct PathBudget {
  int stall_sweeps = 50;    // fix-free sweeps tolerated before a restart
  int restarts = 20;        // fresh randomized matchings after the first try
  int exact_threshold = 8;  // heuristic failure falls back to exact search at n0 <= this
  std::uint64_t max_total_sweeps = 100000;  // global cap across restarts
  std::uint64_t seed = 0;
};

struct PathResult {
  std::optional<PathSolution> solution;
  PathPhase failed_phase = PathPhase::none;
  bool proven_infeasible = false;
  int restarts_used = 0;
  std::uint64_t sweeps_used = 0;
  bool ok() const { return solution.has_value(); }
};

struct ExactPathOptions {
  std::uint64_t node_budget = 1ull << 26;
  int max_n0 = 10;  // hard guards: the search is exponential
  int max_k = 6;
};

struct ExactPathResult {
  std::optional<PathSolution> solution;
  bool budget_exhausted = false;  // true: absence of a solution was NOT proven
  std::uint64_t nodes = 0;
};

// Full independent check: right endpoints, interior vertex m drawn from
// layer m-1 (the traversal order is prescribed), no layer vertex reused,
// every consecutive pair a host edge.
inline bool validate_path_solution(const PathInstance& inst, const PathSolution& sol) {
  const int n0 = static_cast<int>(inst.pairs.size());
  const int k = inst.k;
  if (inst.host == nullptr) return false;
  if (static_cast<int>(sol.paths.size()) != n0) return false;
  std::vector<std::unordered_set<int>> layer_sets(inst.layers.size());
  for (std::size_t m = 0; m < inst.layers.size(); ++m) {
    layer_sets[m].insert(inst.layers[m].begin(), inst.layers[m].end());
  }
  std::unordered_set<int> used;
  for (int i = 0; i < n0; ++i) {
    const auto& path = sol.paths[i];
    if (static_cast<int>(path.size()) != k + 1) return false;
    if (path.front() != inst.pairs[i].first || path.back() != inst.pairs[i].second) return false;
    for (int m = 1; m < k; ++m) {
      if (!layer_sets[m - 1].count(path[m])) return false;
      if (!used.insert(path[m]).second) return false;
    }
    for (int m = 0; m < k; ++m) {
      if (!inst.host->has_edge(path[m], path[m + 1])) return false;
    }
  }
  return true;
}

namespace detail {

// Stages 0..k: stage 0 holds the sources (slot i = pair i), stages 1..k-1
// the layers, stage k the targets (slot i = pair i). The solver works purely
// in slot space; host ids only matter when building adjacency and when
// extracting the solution.
struct PathStages {
  int n0 = 0;
  int k = 0;
  int words = 0;  // bitmask words per adjacency row
  const PathInstance* inst = nullptr;
  std::vector<std::vector<std::vector<int>>> adj;  // [stage m][slot a] -> slots of stage m+1
  std::vector<std::vector<std::uint64_t>> mask;    // [stage m][a*words + w]

  int vertex_id(int m, int a) const {
    if (m == 0) return inst->pairs[a].first;
    if (m == k) return inst->pairs[a].second;
    return inst->layers[m - 1][a];
  }

  bool stage_edge(int m, int a, int b) const {
    return (mask[m][static_cast<std::size_t>(a) * words + (b >> 6)] >> (b & 63)) & 1u;
  }

  void build(const PathInstance& instance) {
    inst = &instance;
    n0 = static_cast<int>(instance.pairs.size());
    k = instance.k;
    words = (n0 + 63) / 64;
    adj.assign(k, {});
    mask.assign(k, {});
    const Graph& g = *instance.host;
    for (int m = 0; m < k; ++m) {
      adj[m].assign(n0, {});
      mask[m].assign(static_cast<std::size_t>(n0) * words, 0);
      for (int a = 0; a < n0; ++a) {
        const int va = vertex_id(m, a);
        for (int b = 0; b < n0; ++b) {
          if (g.has_edge(va, vertex_id(m + 1, b))) {
            adj[m][a].push_back(b);
            mask[m][static_cast<std::size_t>(a) * words + (b >> 6)] |= 1ull << (b & 63);
          }
        }
      }
    }
  }
};

inline void validate_path_instance(const PathInstance& inst) {
  if (inst.host == nullptr) throw std::invalid_argument("insert_paths: null host graph");
  if (inst.k < 3) throw std::invalid_argument("insert_paths: k must be >= 3");
  const int n0 = static_cast<int>(inst.pairs.size());
  if (static_cast<int>(inst.layers.size()) != inst.k - 1) {
    throw std::invalid_argument("insert_paths: expected k-1 layers");
  }
  std::unordered_set<int> seen;
  auto touch = [&](int v) {
    if (v < 0 || v >= inst.host->n) throw std::invalid_argument("insert_paths: vertex out of range");
    if (!seen.insert(v).second) {
      throw std::invalid_argument("insert_paths: pairs/layers are not pairwise disjoint");
    }
  };
  for (const auto& [s, t] : inst.pairs) {
    touch(s);
    touch(t);
  }
  for (const auto& layer : inst.layers) {
    if (static_cast<int>(layer.size()) != n0) {
      throw std::invalid_argument("insert_paths: every layer must have exactly |pairs| vertices");
    }
    for (int v : layer) touch(v);
  }
}

// Mutable repair state: per-stage perfect matchings plus the track each pair
// threads through the stages. sigma(j) = pos[k][j] is the target slot track
// j currently reaches; the goal is sigma = identity.
struct TrackState {
  const PathStages* st = nullptr;
  std::vector<std::vector<int>> match;  // [m][a] -> matched slot at stage m+1
  std::vector<std::vector<int>> pos;    // [m][j] -> slot of track j at stage m
  std::vector<int> inv;                 // inv[sigma(j)] = j
  int nf = 0;                           // # non-fixed tracks

  void rebuild_tracks() {
    const int n0 = st->n0, k = st->k;
    pos.assign(k + 1, std::vector<int>(n0));
    for (int j = 0; j < n0; ++j) pos[0][j] = j;
    for (int m = 0; m < k; ++m) {
      for (int j = 0; j < n0; ++j) pos[m + 1][j] = match[m][pos[m][j]];
    }
    inv.assign(n0, -1);
    nf = 0;
    for (int j = 0; j < n0; ++j) {
      inv[pos[k][j]] = j;
      nf += pos[k][j] != j;
    }
  }

  bool swap_valid(int m, int j1, int j2) const {
    return st->stage_edge(m, pos[m][j1], pos[m + 1][j2]) &&
           st->stage_edge(m, pos[m][j2], pos[m + 1][j1]);
  }

  // Exchange the tails of tracks j1, j2 after stage m: their matched edges
  // at stage m cross over, everything later swaps ownership wholesale.
  void apply_swap(int m, int j1, int j2) {
    const int k = st->k;
    const int old_broken = (pos[k][j1] != j1) + (pos[k][j2] != j2);
    match[m][pos[m][j1]] = pos[m + 1][j2];
    match[m][pos[m][j2]] = pos[m + 1][j1];
    for (int mm = m + 1; mm <= k; ++mm) std::swap(pos[mm][j1], pos[mm][j2]);
    inv[pos[k][j1]] = j1;
    inv[pos[k][j2]] = j2;
    nf += (pos[k][j1] != j1) + (pos[k][j2] != j2) - old_broken;
  }

  // Cyclic tail exchange at one stage: track c[i] adopts c[i+1]'s tail
  // (cyclically) after stage m. Valid iff the stage-m edge from c[i]'s
  // stage-m slot to c[i+1]'s stage-(m+1) slot exists for every i; the L = 2
  // case coincides with swap_valid/apply_swap. A rotation is a composition
  // of L-1 tail swaps inside the single matching m.
  bool rot_valid(int m, const std::vector<int>& c) const {
    const int L = static_cast<int>(c.size());
    for (int i = 0; i < L; ++i) {
      if (!st->stage_edge(m, pos[m][c[i]], pos[m + 1][c[(i + 1) % L]])) return false;
    }
    return true;
  }

  void apply_rotation(int m, const std::vector<int>& c) {
    const int k = st->k;
    const int L = static_cast<int>(c.size());
    int delta = 0;
    for (int t : c) delta -= pos[k][t] != t;
    for (int mm = m + 1; mm <= k; ++mm) {
      const int head = pos[mm][c[0]];
      for (int i = 0; i + 1 < L; ++i) pos[mm][c[i]] = pos[mm][c[i + 1]];
      pos[mm][c[L - 1]] = head;
    }
    for (int t : c) {
      match[m][pos[m][t]] = pos[m + 1][t];
      inv[pos[k][t]] = t;
      delta += pos[k][t] != t;
    }
    nf += delta;
  }
};

}  // namespace detail

// Exhaustive backtracking over interior choices, pair by pair, slots in
// ascending order. Guarded: exponential worst case, intended for tiny
// instances (the heuristic's fallback) and as a test oracle.
inline ExactPathResult exact_disjoint_paths(const PathInstance& inst,
                                            const ExactPathOptions& opt = {}) {
  detail::validate_path_instance(inst);
  const int n0 = static_cast<int>(inst.pairs.size());
  if (n0 > opt.max_n0 || inst.k > opt.max_k) {
    throw std::invalid_argument("exact_disjoint_paths: instance too large for exact search");
  }
  ExactPathResult res;
  if (n0 == 0) {
    res.solution = PathSolution{};
    return res;
  }
  detail::PathStages st;
  st.build(inst);
  const int k = st.k;

  std::vector<std::uint32_t> used(k);  // used[m] = occupancy bits of stage m (1..k-1)
  std::vector<std::vector<int>> chosen(n0, std::vector<int>(k + 1, -1));
  bool out_of_budget = false;

  // place(i, m, a): track i sits at stage m, slot a; extend to stage m+1.
  auto place = [&](auto&& self, int i, int m, int a) -> bool {
    if (++res.nodes > opt.node_budget) {
      out_of_budget = true;
      return false;
    }
    if (m == k - 1) {
      if (!st.stage_edge(k - 1, a, i)) return false;
      if (i + 1 == n0) return true;
      return self(self, i + 1, 0, i + 1);
    }
    for (int b : st.adj[m][a]) {
      if (used[m + 1] & (1u << b)) continue;
      used[m + 1] |= 1u << b;
      chosen[i][m + 1] = b;
      if (self(self, i, m + 1, b)) return true;
      used[m + 1] &= ~(1u << b);
      if (out_of_budget) return false;
    }
    return false;
  };

  const bool found = place(place, 0, 0, 0);
  if (out_of_budget) {
    res.budget_exhausted = true;
    return res;
  }
  if (!found) return res;

  PathSolution sol;
  sol.paths.resize(n0);
  for (int i = 0; i < n0; ++i) {
    auto& p = sol.paths[i];
    p.push_back(inst.pairs[i].first);
    for (int m = 1; m < k; ++m) p.push_back(inst.layers[m - 1][chosen[i][m]]);
    p.push_back(inst.pairs[i].second);
  }
  if (!validate_path_solution(inst, sol)) {
    throw std::logic_error("exact_disjoint_paths: produced an invalid solution");
  }
  res.solution = std::move(sol);
  return res;
}

// Heuristic engine: draw a perfect matching between every pair of
// consecutive stages (Hopcroft-Karp), compose them into a permutation sigma
// of target slots, then repair sigma toward the identity with single-stage
// rotations (cyclic tail exchanges inside one matching — compositions of
// 2-swaps within that matching):
//   - fixes: a rotation (j, x, z_1, .., z_{L-2}) at some stage hands track j
//     the tail that ends at slot j (held by x = inv[j]) and shifts the
//     intermediates' tails down the cycle. With *broken* intermediates the
//     move lowers the number of broken tracks by at least one. Rotations of
//     length L cost only L edge coins but offer ~n0^{L-2} * k candidate
//     cycles per target, so availability grows steeply with L; L <= 4
//     always, 5 once the field has thinned. Every rotation fixing j needs
//     the arc j -> x at its stage, and roughly (1-q)^k of the targets have
//     that arc nowhere — those are unreachable by rotations until their
//     pair is disturbed. A second, gate-free family covers them: two-stage
//     composites that park the slot-j tail on a broken intermediate y at
//     one stage and deliver it to j at another, with the exploratory hop
//     reverted when no delivery exists. Each family unlocks deadlocks the
//     other cannot.
//   - merges: when no fix lands anywhere, one cross swap joining two
//     distinct sigma-cycles refreshes local edge options at unchanged
//     disorder and strictly lowers the cycle count.
//   - lateral rerolls: when neither exists (typically a final short cycle
//     with nothing left to merge), one fixing move routed through a fixed
//     track relocates the disorder at net zero, re-randomizing the stuck
//     endgame. One reroll per stuck sweep, capped by the fixless-sweep
//     budget; the gate-free composite is tried first so rerolls still fire
//     when no broken target has a live j -> x arc.
// Fixes and merges strictly decrease the potential nf*(n0+1) + #cycles, so
// strict phases cannot oscillate. Failure phases: `matching` when some
// stage has no perfect matching (that is a proof of infeasibility),
// `repair` when every attempt reached a dead end, `budget` when moves
// remained but the limits ran out.
inline PathResult insert_paths(const PathInstance& inst, const PathBudget& budget = {}) {
  detail::validate_path_instance(inst);
  PathResult res;
  const int n0 = static_cast<int>(inst.pairs.size());
  if (n0 == 0) {
    res.solution = PathSolution{};
    return res;
  }

  detail::PathStages st;
  st.build(inst);
  const int k = st.k;
  Rng rng = Rng::from_seed(budget.seed).split("insert_paths");

  detail::TrackState ts;
  ts.st = &st;
  ts.match.assign(k, {});

  // A missing perfect matching at any stage is a hard infeasibility proof:
  // a valid solution induces one perfect matching per consecutive stage, and
  // maximum cardinality is invariant under the restart shuffles.
  for (int m = 0; m < k; ++m) {
    const Matching pm = hopcroft_karp_generic(
        n0, n0, [&](int a) -> const std::vector<int>& { return st.adj[m][a]; });
    if (pm.size < n0) {
      res.failed_phase = PathPhase::matching;
      res.proven_infeasible = true;
      return res;
    }
    ts.match[m] = pm.left_to_right;
  }

  std::vector<std::vector<std::vector<int>>> shuffled;  // restart adjacency scratch
  std::vector<int> order(n0);  // intermediate preference, reshuffled per pass

  // Arc of the stage-m "take" digraph: track a could adopt track b's tail.
  auto arc = [&](int m, int a, int b) {
    return st.stage_edge(m, ts.pos[m][a], ts.pos[m + 1][b]);
  };

  std::vector<int> cyc;

  // Makes track j end at slot j via a single-stage rotation with broken
  // intermediates, shortest rotation first. Every stage needs the arc
  // j -> x before anything else: fixing j means adopting the tail that ends
  // at slot j, and x = inv[j] holds it.
  auto fix_target = [&](int j) -> bool {
    const int x = ts.inv[j];
    for (int m = 0; m < k; ++m) {
      if (arc(m, j, x) && arc(m, x, j)) {
        cyc = {j, x};
        ts.apply_rotation(m, cyc);
        return true;
      }
    }
    for (int m = 0; m < k; ++m) {
      if (!arc(m, j, x)) continue;
      for (int z : order) {
        if (z == j || z == x || ts.pos[k][z] == z) continue;
        if (arc(m, x, z) && arc(m, z, j)) {
          cyc = {j, x, z};
          ts.apply_rotation(m, cyc);
          return true;
        }
      }
    }
    // Two-stage composite: x hands the slot-j tail to a broken y at one
    // stage, j takes it from y at another. No single arc is mandatory here —
    // y ranges over every broken track — so this family reaches the targets
    // whose j -> x arc is missing at every stage, where no single-stage
    // rotation can ever fix them. The exploratory hop is reverted when no
    // delivery lands, so committed moves still strictly reduce ts.nf.
    for (int y : order) {
      if (y == j || y == x || ts.pos[k][y] == y) continue;
      for (int m1 = 0; m1 < k; ++m1) {
        if (!ts.swap_valid(m1, x, y)) continue;
        ts.apply_swap(m1, x, y);
        for (int m2 = 0; m2 < k; ++m2) {
          if (ts.swap_valid(m2, j, y)) {
            ts.apply_swap(m2, j, y);
            return true;
          }
        }
        ts.apply_swap(m1, x, y);  // revert the first hop
      }
    }
    for (int m = 0; m < k; ++m) {
      if (!arc(m, j, x)) continue;
      for (int z1 : order) {
        if (z1 == j || z1 == x || ts.pos[k][z1] == z1 || !arc(m, x, z1)) continue;
        for (int z2 : order) {
          if (z2 == j || z2 == x || z2 == z1 || ts.pos[k][z2] == z2) continue;
          if (arc(m, z1, z2) && arc(m, z2, j)) {
            cyc = {j, x, z1, z2};
            ts.apply_rotation(m, cyc);
            return true;
          }
        }
      }
    }
    // Length 5 scans a quadratic candidate pool; worth it only once the
    // field has thinned and shorter rotations have gone scarce.
    if (ts.nf <= 100) {
      for (int m = 0; m < k; ++m) {
        if (!arc(m, j, x)) continue;
        for (int z1 : order) {
          if (z1 == j || z1 == x || ts.pos[k][z1] == z1 || !arc(m, x, z1)) continue;
          for (int z2 : order) {
            if (z2 == j || z2 == x || z2 == z1 || ts.pos[k][z2] == z2 || !arc(m, z1, z2)) continue;
            for (int z3 : order) {
              if (z3 == j || z3 == x || z3 == z1 || z3 == z2 || ts.pos[k][z3] == z3) continue;
              if (arc(m, z2, z3) && arc(m, z3, j)) {
                cyc = {j, x, z1, z2, z3};
                ts.apply_rotation(m, cyc);
                return true;
              }
            }
          }
        }
      }
    }
    return false;
  };

  // Joins two distinct sigma-cycles with one swap. All elements of a
  // non-trivial cycle are broken, so this never touches fixed tracks; the
  // cycle count drops by exactly one, and the refreshed positions of the two
  // swapped tracks open edge options the fix scan could not see before.
  std::vector<int> cid;  // sigma-cycle id per track, -1 on fixed tracks
  auto try_merge = [&]() -> bool {
    cid.assign(n0, -1);
    int cycles = 0;
    for (int j = 0; j < n0; ++j) {
      if (ts.pos[k][j] == j || cid[j] >= 0) continue;
      for (int t = j; cid[t] < 0; t = ts.pos[k][t]) cid[t] = cycles;
      ++cycles;
    }
    if (cycles < 2) return false;
    for (int a : order) {
      if (cid[a] < 0) continue;
      for (int b : order) {
        if (cid[b] < 0 || cid[b] == cid[a]) continue;
        for (int m = 0; m < k; ++m) {
          if (ts.swap_valid(m, a, b)) {
            ts.apply_swap(m, a, b);
            return true;
          }
        }
      }
    }
    return false;
  };

  // Last-resort reroll for stuck states (typically a final short cycle with
  // nothing left to merge): fix one broken target by a rotation through
  // arbitrary tracks, re-breaking any fixed intermediate it passes. Net
  // disorder does not grow, but the broken set relocates onto tracks with
  // fresh edge coins, so the next strict scan sees a rerolled endgame. One
  // reroll per stuck sweep; the fixless-sweep cap bounds how long rerolls
  // may fail to unlock strict progress.
  auto lateral_move = [&]() -> bool {
    // Gate-free first: the two-stage composite through a fixed y works even
    // when no broken target has its j -> x arc anywhere.
    for (int jj : order) {
      if (ts.pos[k][jj] == jj) continue;
      const int x = ts.inv[jj];
      for (int y : order) {
        if (y == jj || y == x || ts.pos[k][y] != y) continue;
        for (int m1 = 0; m1 < k; ++m1) {
          if (!ts.swap_valid(m1, x, y)) continue;
          ts.apply_swap(m1, x, y);
          for (int m2 = 0; m2 < k; ++m2) {
            if (ts.swap_valid(m2, jj, y)) {
              ts.apply_swap(m2, jj, y);
              return true;
            }
          }
          ts.apply_swap(m1, x, y);  // revert the first hop
        }
      }
    }
    for (int jj : order) {
      if (ts.pos[k][jj] == jj) continue;
      const int x = ts.inv[jj];
      for (int m = 0; m < k; ++m) {
        if (!arc(m, jj, x)) continue;
        for (int z : order) {
          if (z == jj || z == x) continue;
          if (arc(m, x, z) && arc(m, z, jj)) {
            cyc = {jj, x, z};
            ts.apply_rotation(m, cyc);
            return true;
          }
        }
      }
    }
    for (int jj : order) {
      if (ts.pos[k][jj] == jj) continue;
      const int x = ts.inv[jj];
      for (int m = 0; m < k; ++m) {
        if (!arc(m, jj, x)) continue;
        for (int z1 : order) {
          if (z1 == jj || z1 == x || !arc(m, x, z1)) continue;
          for (int z2 : order) {
            if (z2 == jj || z2 == x || z2 == z1) continue;
            if (arc(m, z1, z2) && arc(m, z2, jj)) {
              cyc = {jj, x, z1, z2};
              ts.apply_rotation(m, cyc);
              return true;
            }
          }
        }
      }
    }
    return false;
  };

  bool all_dead_ends = true;
  for (int restart = 0; restart <= budget.restarts; ++restart) {
    res.restarts_used = restart;
    if (restart > 0) {
      // Fresh matchings: shuffling every adjacency row makes Hopcroft-Karp
      // walk a different augmenting structure.
      if (shuffled.empty()) shuffled = st.adj;
      for (int m = 0; m < k; ++m) {
        for (auto& row : shuffled[m]) rng.shuffle(row);
        const Matching pm = hopcroft_karp_generic(
            n0, n0, [&](int a) -> const std::vector<int>& { return shuffled[m][a]; });
        ts.match[m] = pm.left_to_right;
      }
    }
    ts.rebuild_tracks();

    int fixless = 0;  // consecutive sweeps that landed merges but no fix
    while (ts.nf > 0) {
      if (res.sweeps_used >= budget.max_total_sweeps) {
        res.failed_phase = PathPhase::budget;
        return res;
      }
      ++res.sweeps_used;
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      int fixed_count = 0;
      for (int j = 0; j < n0; ++j) {
        if (ts.pos[k][j] != j && fix_target(j)) ++fixed_count;
      }
      if (fixed_count > 0) {
        fixless = 0;
        continue;
      }
      if (!try_merge() && !lateral_move()) break;  // dead end: no move exists
      if (++fixless >= budget.stall_sweeps) {
        all_dead_ends = false;  // moves kept landing; we just stopped gaining
        break;
      }
    }
    if (ts.nf == 0) {
      PathSolution sol;
      sol.paths.resize(n0);
      for (int j = 0; j < n0; ++j) {
        auto& p = sol.paths[j];
        p.push_back(inst.pairs[j].first);
        for (int m = 1; m < k; ++m) p.push_back(st.vertex_id(m, ts.pos[m][j]));
        p.push_back(inst.pairs[j].second);
      }
      if (!validate_path_solution(inst, sol)) {
        throw std::logic_error("insert_paths: produced an invalid solution");
      }
      res.solution = std::move(sol);
      res.failed_phase = PathPhase::none;
      return res;
    }
  }

  // Heuristic exhausted. Tiny instances get the exact verdict.
  if (n0 <= budget.exact_threshold) {
    const ExactPathResult ex = exact_disjoint_paths(inst);
    if (ex.solution) {
      res.solution = ex.solution;
      res.failed_phase = PathPhase::none;
      return res;
    }
    if (ex.budget_exhausted) {
      res.failed_phase = PathPhase::budget;
      return res;
    }
    res.failed_phase = PathPhase::repair;
    res.proven_infeasible = true;
    return res;
  }
  res.failed_phase = all_dead_ends ? PathPhase::repair : PathPhase::budget;
  return res;
}

}  // namespace treembed
