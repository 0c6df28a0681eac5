#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treembed/graph.hpp"
#include "treembed/matching.hpp"

namespace treembed {

// Assign to each center c_i a set of demands[i] private neighbors from the
// pool, using only edges of the given bipartite graph. centers/pool hold the
// caller's vertex ids and must equal the graph's side lists.
struct StarInstance {
  std::vector<int> centers;
  std::vector<int> demands;
  std::vector<int> pool;
  int degree_cap = 0;  // max allowed demand (caller's Delta bound)
};

struct StarSolution {
  // leaves[i] = sorted pool ids assigned to centers[i]; sizes match demands.
  std::vector<std::vector<int>> leaves;
};

// Constructive infeasibility proof: a set W of clones whose pooled
// neighborhood is smaller than |W| (Hall violator), extracted from the
// alternating-reachability forest of a maximum matching.
struct HallWitness {
  std::vector<int> clones;           // clone indices (diagnostic)
  std::vector<int> centers;          // distinct center ids behind those clones
  std::size_t neighborhood_size = 0; // |N(W)|, strictly < clones.size()
};

struct StarResult {
  std::optional<StarSolution> solution;
  std::optional<HallWitness> witness;
  bool ok() const { return solution.has_value(); }
};

// Reduction: clone center i into demands[i] copies, each inheriting the full
// adjacency row; a perfect matching of clones against the pool is exactly a
// star family. Hopcroft-Karp keeps this O(E * sqrt(V)) overall.
inline StarResult star_completion(const BipartiteGraph& h, const StarInstance& inst) {
  const int nc = static_cast<int>(inst.centers.size());
  if (static_cast<int>(inst.demands.size()) != nc) {
    throw std::invalid_argument("star_completion: centers/demands size mismatch");
  }
  if (h.left != inst.centers || h.right != inst.pool) {
    throw std::invalid_argument("star_completion: bipartite graph sides do not match instance");
  }
  std::size_t total = 0;
  for (int i = 0; i < nc; ++i) {
    if (inst.demands[i] < 1) throw std::invalid_argument("star_completion: demand must be >= 1");
    if (inst.degree_cap > 0 && inst.demands[i] > inst.degree_cap) {
      throw std::invalid_argument("star_completion: demand exceeds degree cap");
    }
    total += static_cast<std::size_t>(inst.demands[i]);
  }
  if (total != inst.pool.size()) {
    throw std::invalid_argument("star_completion: demands must sum to the pool size (got " +
                                std::to_string(total) + " vs " + std::to_string(inst.pool.size()) + ")");
  }

  // clone_center[c] = which center clone c copies.
  std::vector<int> clone_center;
  clone_center.reserve(total);
  for (int i = 0; i < nc; ++i) {
    for (int d = 0; d < inst.demands[i]; ++d) clone_center.push_back(i);
  }
  const int n_clones = static_cast<int>(total);
  const int n_pool = static_cast<int>(inst.pool.size());

  auto adj = [&](int c) -> const std::vector<int>& { return h.adj[clone_center[c]]; };
  const Matching m = hopcroft_karp_generic(n_clones, n_pool, adj);

  StarResult res;
  if (m.size == n_clones) {
    StarSolution sol;
    sol.leaves.resize(nc);
    for (int i = 0; i < nc; ++i) sol.leaves[i].reserve(inst.demands[i]);
    for (int c = 0; c < n_clones; ++c) {
      sol.leaves[clone_center[c]].push_back(inst.pool[m.left_to_right[c]]);
    }
    for (auto& l : sol.leaves) std::sort(l.begin(), l.end());
    res.solution = std::move(sol);
    return res;
  }

  // Koenig-style witness: alternating BFS from the unmatched clones. Every
  // reached pool vertex is matched (else the matching wasn't maximum), and
  // the reached clone set W ends up with |N(W)| = |W| - deficiency < |W|.
  HallWitness w;
  std::vector<char> vis_clone(n_clones, 0), vis_pool(n_pool, 0);
  std::vector<int> queue;
  for (int c = 0; c < n_clones; ++c) {
    if (m.left_to_right[c] < 0) {
      vis_clone[c] = 1;
      queue.push_back(c);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int c = queue[head];
    for (int r : adj(c)) {
      if (vis_pool[r]) continue;
      vis_pool[r] = 1;
      const int c2 = m.right_to_left[r];
      if (c2 >= 0 && !vis_clone[c2]) {
        vis_clone[c2] = 1;
        queue.push_back(c2);
      }
    }
  }
  std::vector<char> center_seen(nc, 0);
  for (int c = 0; c < n_clones; ++c) {
    if (!vis_clone[c]) continue;
    w.clones.push_back(c);
    if (!center_seen[clone_center[c]]++) w.centers.push_back(inst.centers[clone_center[c]]);
  }
  for (int r = 0; r < n_pool; ++r) w.neighborhood_size += vis_pool[r];
  res.witness = std::move(w);
  return res;
}

// Full independent check of a star solution: partition of the pool, sizes
// equal to demands, every assignment backed by an edge.
inline bool validate_star_solution(const BipartiteGraph& h, const StarInstance& inst,
                                   const StarSolution& sol) {
  const int nc = static_cast<int>(inst.centers.size());
  if (static_cast<int>(sol.leaves.size()) != nc) return false;
  std::vector<int> pool_index(inst.pool.size());
  std::vector<char> taken(inst.pool.size(), 0);
  std::size_t assigned = 0;
  for (int i = 0; i < nc; ++i) {
    if (static_cast<int>(sol.leaves[i].size()) != inst.demands[i]) return false;
    for (int leaf : sol.leaves[i]) {
      const auto it = std::find(inst.pool.begin(), inst.pool.end(), leaf);
      if (it == inst.pool.end()) return false;
      const int ri = static_cast<int>(it - inst.pool.begin());
      if (taken[ri]++) return false;
      if (!h.has_edge(i, ri)) return false;
      ++assigned;
    }
  }
  return assigned == inst.pool.size();
}

}  // namespace treembed
