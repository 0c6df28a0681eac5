#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treembed/rng.hpp"

namespace treembed {

// A labeled tree on vertices 0..n-1. Built through the factory functions
// below; adjacency lists are kept sorted so has_edge is a binary search.
struct Tree {
  int n = 0;
  std::vector<std::vector<int>> adjacency;

  int degree(int v) const { return static_cast<int>(adjacency[v].size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& a : adjacency) d = std::max(d, static_cast<int>(a.size()));
    return d;
  }

  bool has_edge(int u, int v) const {
    const auto& a = adjacency[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  // Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    e.reserve(n > 0 ? n - 1 : 0);
    for (int u = 0; u < n; ++u) {
      for (int v : adjacency[u]) {
        if (v > u) e.emplace_back(u, v);
      }
    }
    return e;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& a : adjacency) m += a.size();
    return m / 2;
  }
};

// Degree-based vertex partition: leaves, internal path vertices, branch
// vertices. Every vertex of a tree with n >= 2 lands in exactly one class.
struct DegreeClasses {
  std::vector<int> v1;  // degree 1
  std::vector<int> v2;  // degree 2
  std::vector<int> v3;  // degree >= 3
};

// A bare path: a path whose internal vertices all have degree 2 in the host
// tree. Stored oriented: endpoint_a, then internal[0..k-2], then endpoint_b.
struct BarePath {
  int endpoint_a = -1;
  int endpoint_b = -1;
  std::vector<int> internal;
};

// Vertex-disjoint bare paths of length k plus the forest left by deleting
// their internal vertices.
struct BareDecomposition {
  int k = 0;
  std::vector<BarePath> paths;
  std::vector<int> forest_vertices;  // sorted; complements the internals
};

// Validating constructor for trees given as an edge list. Throws
// std::invalid_argument naming the first defect found: out-of-range label,
// self-loop, duplicate edge, wrong edge count, cycle, or disconnection.
inline Tree tree_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw std::invalid_argument("tree_from_edges: n must be >= 1");
  if (static_cast<int>(edges.size()) != n - 1) {
    throw std::invalid_argument("tree_from_edges: expected exactly n-1 edges, got " +
                                std::to_string(edges.size()));
  }
  Tree t;
  t.n = n;
  t.adjacency.resize(n);

  // Union-find for cycle detection.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw std::invalid_argument("tree_from_edges: vertex label out of range");
    }
    if (u == v) throw std::invalid_argument("tree_from_edges: self-loop");
    const int ru = find(u), rv = find(v);
    if (ru == rv) throw std::invalid_argument("tree_from_edges: edge list contains a cycle");
    parent[ru] = rv;
    auto& au = t.adjacency[u];
    const auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) {
      throw std::invalid_argument("tree_from_edges: duplicate edge");
    }
    au.insert(it, v);
    auto& av = t.adjacency[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  }

  // n-1 acyclic edges connect everything, but keep the check: it documents
  // the invariant and catches future factory bugs.
  const int root = find(0);
  for (int v = 0; v < n; ++v) {
    if (find(v) != root) {
      throw std::invalid_argument("tree_from_edges: edge list is disconnected");
    }
  }
  return t;
}

inline DegreeClasses classify_degrees(const Tree& t) {
  if (t.n < 2) throw std::invalid_argument("classify_degrees: tree must have >= 2 vertices");
  DegreeClasses c;
  for (int v = 0; v < t.n; ++v) {
    const int d = t.degree(v);
    if (d == 1) {
      c.v1.push_back(v);
    } else if (d == 2) {
      c.v2.push_back(v);
    } else {
      c.v3.push_back(v);
    }
  }
  return c;
}

// Comb on n = s^2 vertices: a spine path of s vertices, each carrying a
// pendant path of s-1 vertices. Spine labels 0..s-1; tooth i occupies
// s + i*(s-1) .. s + (i+1)*(s-1) - 1, attached at spine vertex i.
inline Tree comb_tree(int n) {
  if (n < 4) throw std::invalid_argument("comb_tree: n must be >= 4");
  const int s = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  if (s * s != n) throw std::invalid_argument("comb_tree: n must be a perfect square");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < s; ++i) edges.emplace_back(i, i + 1);
  for (int i = 0; i < s; ++i) {
    int prev = i;
    for (int t = 0; t < s - 1; ++t) {
      const int label = s + i * (s - 1) + t;
      edges.emplace_back(prev, label);
      prev = label;
    }
  }
  return tree_from_edges(n, edges);
}

// Near-maximal-leaf tree: spine path of k = ceil(n/(delta-1)) vertices; the
// first k-1 spine vertices carry delta-2 pendant leaves each, the last
// carries delta-2-r where r = (delta-1)*k - n is the rounding surplus.
// Spine labels 0..k-1, then leaves in attachment order (all leaves of spine
// vertex 0 first, and so on).
inline Tree t_n_delta(int n, int delta) {
  if (delta < 3) throw std::invalid_argument("t_n_delta: delta must be >= 3");
  if (delta > n) throw std::invalid_argument("t_n_delta: delta must be <= n");
  const int k = (n + delta - 2) / (delta - 1);  // ceil(n / (delta-1))
  const int r = (delta - 1) * k - n;            // 0 <= r <= delta-2

  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  int next = k;
  for (int i = 0; i < k; ++i) {
    const int leaves = delta - 2 - (i == k - 1 ? r : 0);
    for (int j = 0; j < leaves; ++j) edges.emplace_back(i, next++);
  }
  if (next != n) throw std::logic_error("t_n_delta: leaf accounting is off");
  return tree_from_edges(n, edges);
}

// Uniformly random labeled tree via a random Prufer sequence (linear decode).
inline Tree random_tree(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_tree: n must be >= 2");
  Rng rng = Rng::from_seed(seed).split("random_tree");
  std::vector<int> seq(std::max(0, n - 2));
  for (auto& s : seq) s = rng.next_int(n);

  std::vector<int> deg(n, 1);
  for (int s : seq) ++deg[s];

  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int s : seq) {
    edges.emplace_back(leaf, s);
    if (--deg[s] == 1 && s < ptr) {
      leaf = s;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return tree_from_edges(n, edges);
}

// Random tree with max degree <= delta: vertices attach one at a time to a
// uniformly random earlier vertex that still has degree headroom. Not the
// uniform distribution over bounded-degree trees — a cheap generator of
// varied shapes for experiments.
inline Tree random_bounded_degree_tree(int n, int delta, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_bounded_degree_tree: n must be >= 2");
  if (delta < 2) throw std::invalid_argument("random_bounded_degree_tree: delta must be >= 2");
  Rng rng = Rng::from_seed(seed).split("random_bounded_degree_tree");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  std::vector<int> deg(n, 0);
  std::vector<int> eligible = {0};
  for (int v = 1; v < n; ++v) {
    const int idx = rng.next_int(static_cast<int>(eligible.size()));
    const int u = eligible[idx];
    edges.emplace_back(u, v);
    if (++deg[u] == delta) {
      eligible[idx] = eligible.back();
      eligible.pop_back();
    }
    if (++deg[v] < delta) eligible.push_back(v);
  }
  return tree_from_edges(n, edges);
}

// Greedily packs vertex-disjoint bare paths of length k (k edges, k-1
// internal vertices). Every maximal degree-2 chain between two vertices of
// degree != 2 is chopped from the end nearest its lower-labeled terminal: a
// chain of m internal vertices yields floor(m / (k+1)) paths, each consuming
// k+1 consecutive chain vertices (both path endpoints included, so adjacent
// paths within a chain stay vertex-disjoint).
//
// Guarantees paths.size() >= (n - (2l - 2)(k + 1)) / (k + 1) where l is the
// leaf count: at most 2l-3 chains exist, each wastes at most k uncovered
// vertices, and the terminal vertices number at most 2l-2 in total.
inline BareDecomposition bare_path_decomposition(const Tree& t, int k) {
  if (k < 1) throw std::invalid_argument("bare_path_decomposition: k must be >= 1");
  if (t.n < 2) throw std::invalid_argument("bare_path_decomposition: tree must have >= 2 vertices");

  BareDecomposition dec;
  dec.k = k;
  std::vector<char> is_internal(t.n, 0);

  for (int a = 0; a < t.n; ++a) {
    if (t.degree(a) == 2) continue;  // chains start at terminals only
    for (int nb : t.adjacency[a]) {
      // Walk the degree-2 chain leaving a through nb.
      std::vector<int> chain;
      int prev = a, cur = nb;
      while (t.degree(cur) == 2) {
        chain.push_back(cur);
        const auto& adj = t.adjacency[cur];
        const int next = (adj[0] == prev) ? adj[1] : adj[0];
        prev = cur;
        cur = next;
      }
      const int b = cur;  // other terminal
      // Each chain is seen from both terminals; keep the orientation from
      // the lower label. A direct terminal-terminal edge (empty chain) has
      // nothing to chop either way.
      if (b < a || (b == a && chain.empty())) continue;
      if (b == a) continue;  // unreachable in a tree; defensive
      const int m = static_cast<int>(chain.size());
      for (int start = 0; start + k < m; start += k + 1) {
        BarePath p;
        p.endpoint_a = chain[start];
        p.endpoint_b = chain[start + k];
        p.internal.assign(chain.begin() + start + 1, chain.begin() + start + k);
        for (int v : p.internal) is_internal[v] = 1;
        dec.paths.push_back(std::move(p));
      }
    }
  }

  for (int v = 0; v < t.n; ++v) {
    if (!is_internal[v]) dec.forest_vertices.push_back(v);
  }
  return dec;
}

}  // namespace treembed
