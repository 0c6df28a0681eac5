#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treembed/rng.hpp"

namespace treembed {

// Simple undirected graph on vertices 0..n-1, sorted adjacency lists.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adjacency;
  std::size_t edge_count = 0;

  int degree(int v) const { return static_cast<int>(adjacency[v].size()); }

  bool has_edge(int u, int v) const {
    const auto& a = adjacency[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  void add_edge_unchecked(int u, int v) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
    ++edge_count;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    e.reserve(edge_count);
    for (int u = 0; u < n; ++u) {
      for (int v : adjacency[u]) {
        if (v > u) e.emplace_back(u, v);
      }
    }
    return e;
  }

  // Validating constructor (used by file readers). Rejects out-of-range
  // labels, self-loops and duplicates.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("Graph::from_edges: negative n");
    Graph g;
    g.n = n;
    g.adjacency.resize(n);
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n) {
        throw std::invalid_argument("Graph::from_edges: vertex label out of range");
      }
      if (u == v) throw std::invalid_argument("Graph::from_edges: self-loop");
      g.add_edge_unchecked(u, v);
    }
    for (auto& a : g.adjacency) {
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
        throw std::invalid_argument("Graph::from_edges: duplicate edge");
      }
    }
    return g;
  }
};

namespace detail {
// Above this density, per-pair Bernoulli draws beat geometric skipping.
inline constexpr double kDenseEdgeThreshold = 0.2;
}  // namespace detail

// G(n, p). Sparse regime walks the lexicographic pair stream with geometric
// skips (expected time O(n + p*n^2)); dense regime draws every pair. Both
// regimes consume the stream in pair order, so adjacency lists come out
// sorted without a post-pass.
inline Graph gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("gnp: negative n");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p must lie in [0, 1]");
  Graph g;
  g.n = n;
  g.adjacency.resize(n);
  if (n < 2 || p == 0.0) return g;

  if (p == 1.0) {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) g.add_edge_unchecked(u, v);
    }
    return g;
  }

  Rng rng = Rng::from_seed(seed).split("gnp");
  if (p > detail::kDenseEdgeThreshold) {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.bernoulli(p)) g.add_edge_unchecked(u, v);
      }
    }
    return g;
  }

  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t idx = rng.geometric_skip(p, total);
  // Cursor over rows: row u covers pair indices [row_start, row_start + n-1-u).
  std::uint64_t row_start = 0;
  int u = 0;
  while (idx < total) {
    while (idx >= row_start + static_cast<std::uint64_t>(n - 1 - u)) {
      row_start += static_cast<std::uint64_t>(n - 1 - u);
      ++u;
    }
    const int v = u + 1 + static_cast<int>(idx - row_start);
    g.add_edge_unchecked(u, v);
    idx += 1 + rng.geometric_skip(p, total);
  }
  return g;
}

// Two independent G(n, p') rounds whose union is distributed as G(n, p):
// a pair survives both rounds with probability (1-p')^2 = 1-p, i.e.
// p' = 1 - sqrt(1 - p). Phased algorithms draw early edges from g1 and
// later repairs from g2 so the second round is untouched randomness.
struct TwoRoundGraph {
  Graph g1;
  Graph g2;
  double p = 0.0;
  double p_prime = 0.0;

  int n() const { return g1.n; }

  bool has_edge(int u, int v) const { return g1.has_edge(u, v) || g2.has_edge(u, v); }

  Graph union_graph() const {
    Graph g;
    g.n = g1.n;
    g.adjacency.resize(g.n);
    for (int u = 0; u < g.n; ++u) {
      auto& out = g.adjacency[u];
      const auto& a = g1.adjacency[u];
      const auto& b = g2.adjacency[u];
      out.resize(a.size() + b.size());
      out.erase(std::set_union(a.begin(), a.end(), b.begin(), b.end(), out.begin()),
                out.end());
    }
    for (int u = 0; u < g.n; ++u) g.edge_count += g.adjacency[u].size();
    g.edge_count /= 2;
    return g;
  }
};

inline double two_round_p_prime(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("two_round_p_prime: p must lie in [0, 1]");
  // 1 - sqrt(1-p), computed stably for small p.
  return p / (1.0 + std::sqrt(1.0 - p));
}

inline TwoRoundGraph gnp_two_round(int n, double p, std::uint64_t seed) {
  TwoRoundGraph tr;
  tr.p = p;
  tr.p_prime = two_round_p_prime(p);
  const Rng root = Rng::from_seed(seed);
  tr.g1 = gnp(n, tr.p_prime, root.split("round1").key);
  tr.g2 = gnp(n, tr.p_prime, root.split("round2").key);
  return tr;
}

// Bipartite graph between an ordered left vertex list and an ordered right
// vertex list. The lists carry caller-side vertex ids (or just 0..size-1 for
// generated instances); adjacency is stored in local *indices* into `right`.
struct BipartiteGraph {
  std::vector<int> left;
  std::vector<int> right;
  std::vector<std::vector<int>> adj;  // adj[left index] -> sorted right indices
  std::size_t edge_count = 0;

  int left_size() const { return static_cast<int>(left.size()); }
  int right_size() const { return static_cast<int>(right.size()); }

  bool has_edge(int li, int ri) const {
    const auto& a = adj[li];
    return std::binary_search(a.begin(), a.end(), ri);
  }
};

// Bipartite G(a, b, p): every left-right pair independently with probability
// p. Same sparse/dense split as gnp; the pair stream is row-major, so an
// index maps to (idx / b, idx % b) directly.
inline BipartiteGraph bipartite_gnp(int a, int b, double p, std::uint64_t seed) {
  if (a < 0 || b < 0) throw std::invalid_argument("bipartite_gnp: negative side");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bipartite_gnp: p must lie in [0, 1]");
  BipartiteGraph g;
  g.left.resize(a);
  g.right.resize(b);
  for (int i = 0; i < a; ++i) g.left[i] = i;
  for (int i = 0; i < b; ++i) g.right[i] = i;
  g.adj.resize(a);
  if (a == 0 || b == 0 || p == 0.0) return g;

  auto add = [&](int li, int ri) {
    g.adj[li].push_back(ri);
    ++g.edge_count;
  };
  if (p == 1.0) {
    for (int li = 0; li < a; ++li) {
      for (int ri = 0; ri < b; ++ri) add(li, ri);
    }
    return g;
  }

  Rng rng = Rng::from_seed(seed).split("bipartite_gnp");
  if (p > detail::kDenseEdgeThreshold) {
    for (int li = 0; li < a; ++li) {
      for (int ri = 0; ri < b; ++ri) {
        if (rng.bernoulli(p)) add(li, ri);
      }
    }
    return g;
  }

  const std::uint64_t total = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
  std::uint64_t idx = rng.geometric_skip(p, total);
  while (idx < total) {
    add(static_cast<int>(idx / b), static_cast<int>(idx % b));
    idx += 1 + rng.geometric_skip(p, total);
  }
  return g;
}

// The bipartite graph a host graph induces between two disjoint vertex sets.
// `left` and `right` keep their given order (callers rely on left[i]
// matching their i-th center); adjacency is translated to right-indices.
inline BipartiteGraph restrict_bipartite(const Graph& g, const std::vector<int>& left,
                                         const std::vector<int>& right) {
  std::unordered_map<int, int> right_index;
  right_index.reserve(right.size() * 2);
  for (int i = 0; i < static_cast<int>(right.size()); ++i) {
    const int v = right[i];
    if (v < 0 || v >= g.n) throw std::invalid_argument("restrict_bipartite: right vertex out of range");
    if (!right_index.emplace(v, i).second) {
      throw std::invalid_argument("restrict_bipartite: duplicate right vertex");
    }
  }
  BipartiteGraph h;
  h.left = left;
  h.right = right;
  h.adj.resize(left.size());
  std::vector<char> seen_left(g.n, 0);
  for (int li = 0; li < static_cast<int>(left.size()); ++li) {
    const int v = left[li];
    if (v < 0 || v >= g.n) throw std::invalid_argument("restrict_bipartite: left vertex out of range");
    if (seen_left[v]++) throw std::invalid_argument("restrict_bipartite: duplicate left vertex");
    if (right_index.count(v)) throw std::invalid_argument("restrict_bipartite: sides overlap");
    auto& row = h.adj[li];
    for (int nb : g.adjacency[v]) {
      const auto it = right_index.find(nb);
      if (it != right_index.end()) row.push_back(it->second);
    }
    std::sort(row.begin(), row.end());
    h.edge_count += row.size();
  }
  return h;
}

}  // namespace treembed
