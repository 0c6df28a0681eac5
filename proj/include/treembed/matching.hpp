#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "treembed/graph.hpp"

namespace treembed {

struct Matching {
  std::vector<int> left_to_right;  // -1 = unmatched
  std::vector<int> right_to_left;
  int size = 0;
};

// Hopcroft-Karp, O(E * sqrt(V)), generic over the adjacency accessor so the
// same engine runs on materialized bipartite graphs and on virtual "cloned"
// vertices (star completion clones a center once per demanded leaf, and all
// clones share one physical adjacency row — materializing them would blow up
// memory for nothing).
//
// adj(l) must return a forward-iterable range of right indices.
template <class AdjFn>
Matching hopcroft_karp_generic(int n_left, int n_right, AdjFn&& adj) {
  Matching m;
  m.left_to_right.assign(n_left, -1);
  m.right_to_left.assign(n_right, -1);

  // Greedy warm start saves a phase or two.
  for (int l = 0; l < n_left; ++l) {
    for (int r : adj(l)) {
      if (m.right_to_left[r] < 0) {
        m.left_to_right[l] = r;
        m.right_to_left[r] = l;
        ++m.size;
        break;
      }
    }
  }

  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> dist(n_left);
  std::vector<int> queue(n_left);

  auto bfs = [&]() -> bool {
    int head = 0, tail = 0;
    for (int l = 0; l < n_left; ++l) {
      if (m.left_to_right[l] < 0) {
        dist[l] = 0;
        queue[tail++] = l;
      } else {
        dist[l] = kInf;
      }
    }
    bool reached_free = false;
    while (head < tail) {
      const int l = queue[head++];
      for (int r : adj(l)) {
        const int l2 = m.right_to_left[r];
        if (l2 < 0) {
          reached_free = true;
        } else if (dist[l2] == kInf) {
          dist[l2] = dist[l] + 1;
          queue[tail++] = l2;
        }
      }
    }
    return reached_free;
  };

  auto dfs = [&](auto&& self, int l) -> bool {
    for (int r : adj(l)) {
      const int l2 = m.right_to_left[r];
      if (l2 < 0 || (dist[l2] == dist[l] + 1 && self(self, l2))) {
        m.left_to_right[l] = r;
        m.right_to_left[r] = l;
        return true;
      }
    }
    dist[l] = kInf;
    return false;
  };

  while (bfs()) {
    for (int l = 0; l < n_left; ++l) {
      if (m.left_to_right[l] < 0 && dfs(dfs, l)) ++m.size;
    }
  }
  return m;
}

inline Matching max_bipartite_matching(const BipartiteGraph& g) {
  return hopcroft_karp_generic(g.left_size(), g.right_size(),
                               [&](int l) -> const std::vector<int>& { return g.adj[l]; });
}

// Independent maximality certificate: a single Kuhn-style augmenting-path
// search from every unmatched left vertex. Deliberately not sharing code
// with hopcroft_karp_generic — this is the cross-check the tests lean on.
template <class AdjFn>
bool matching_is_maximum(int n_left, int n_right, AdjFn&& adj, const Matching& m) {
  std::vector<char> visited(n_right);
  auto augments = [&](auto&& self, int l) -> bool {
    for (int r : adj(l)) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (m.right_to_left[r] < 0 || self(self, m.right_to_left[r])) return true;
    }
    return false;
  };
  for (int l = 0; l < n_left; ++l) {
    if (m.left_to_right[l] >= 0) continue;
    visited.assign(n_right, 0);
    if (augments(augments, l)) return false;
  }
  return true;
}

inline bool matching_is_maximum(const BipartiteGraph& g, const Matching& m) {
  return matching_is_maximum(g.left_size(), g.right_size(),
                             [&](int l) -> const std::vector<int>& { return g.adj[l]; }, m);
}

}  // namespace treembed
