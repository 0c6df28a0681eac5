#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "treembed/graph.hpp"
#include "treembed/tree.hpp"

namespace treembed {

// Partial injective map from tree labels to host vertices. `map[tv]` is the
// host image or -1; `used` mirrors the image set so "first free host vertex"
// queries are O(1) amortized.
struct Embedding {
  std::vector<int> map;
  std::vector<char> used;
  int used_count = 0;

  static Embedding empty(int tree_n, int host_n) {
    Embedding e;
    e.map.assign(tree_n, -1);
    e.used.assign(host_n, 0);
    return e;
  }

  bool is_mapped(int tv) const { return map[tv] >= 0; }

  void assign(int tv, int hv) {
    assert(map[tv] < 0 && !used[hv]);
    map[tv] = hv;
    used[hv] = 1;
    ++used_count;
  }
};

// An induced subforest of a tree, kept in the tree's label space so partial
// embeddings stay meaningful across phases. Absent vertices have `present`
// cleared and empty adjacency.
struct Forest {
  int n = 0;  // size of the original label space
  std::vector<char> present;
  std::vector<std::vector<int>> adjacency;
  int vertex_count = 0;

  static Forest whole(const Tree& t) {
    Forest f;
    f.n = t.n;
    f.present.assign(t.n, 1);
    f.adjacency = t.adjacency;
    f.vertex_count = t.n;
    return f;
  }

  static Forest without_vertices(const Tree& t, const std::vector<int>& removed) {
    Forest f;
    f.n = t.n;
    f.present.assign(t.n, 1);
    for (int v : removed) {
      if (v < 0 || v >= t.n) throw std::invalid_argument("Forest: removed vertex out of range");
      f.present[v] = 0;
    }
    f.adjacency.resize(t.n);
    f.vertex_count = 0;
    for (int v = 0; v < t.n; ++v) {
      if (!f.present[v]) continue;
      ++f.vertex_count;
      for (int nb : t.adjacency[v]) {
        if (f.present[nb]) f.adjacency[v].push_back(nb);
      }
    }
    return f;
  }
};

struct GreedyResult {
  std::optional<Embedding> embedding;
  int stuck_at = -1;  // tree vertex whose children could not be placed
  bool ok() const { return embedding.has_value(); }
};

// Embeds the forest into the host by BFS: each component is rooted at its
// lowest present label, roots and children always take the lowest-indexed
// free host vertices among the current image's neighbors. Preplaced vertices
// (same label space, same host) are kept and their tree edges verified as
// they are encountered. Fails with the blocking tree vertex when some
// vertex's image has fewer free neighbors than unplaced children.
//
// Deterministic: ties never exist (lowest index wins), so a given
// (forest, host, preplaced) triple always produces the same embedding.
inline GreedyResult greedy_embed(const Forest& f, const Graph& g, const Embedding& preplaced) {
  if (static_cast<int>(preplaced.map.size()) != f.n) {
    throw std::invalid_argument("greedy_embed: preplaced embedding has wrong tree size");
  }
  if (static_cast<int>(preplaced.used.size()) != g.n) {
    throw std::invalid_argument("greedy_embed: preplaced embedding has wrong host size");
  }
  int to_place = 0;
  for (int v = 0; v < f.n; ++v) {
    if (f.present[v] && !preplaced.is_mapped(v)) ++to_place;
  }
  if (to_place > g.n - preplaced.used_count) {
    throw std::invalid_argument("greedy_embed: host has fewer free vertices than the forest needs");
  }

  Embedding phi = preplaced;
  GreedyResult res;
  std::vector<char> visited(f.n, 0);
  std::vector<int> queue;
  queue.reserve(f.vertex_count);
  int first_free = 0;  // cursor for root placement; only ever moves right

  for (int root = 0; root < f.n; ++root) {
    if (!f.present[root] || visited[root]) continue;
    visited[root] = 1;
    if (!phi.is_mapped(root)) {
      while (first_free < g.n && phi.used[first_free]) ++first_free;
      assert(first_free < g.n);  // guaranteed by the to_place check
      phi.assign(root, first_free);
    }
    queue.clear();
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      const int hv = phi.map[v];
      // Children in label order (adjacency is sorted).
      int unplaced = 0;
      for (int c : f.adjacency[v]) {
        if (visited[c]) continue;
        if (phi.is_mapped(c)) {
          // Preplaced child: the edge must already be real.
          if (!g.has_edge(hv, phi.map[c])) {
            res.stuck_at = v;
            return res;
          }
        } else {
          ++unplaced;
        }
      }
      if (unplaced > 0) {
        // Lowest-indexed free neighbors of the image, in host order.
        std::vector<int> slots;
        slots.reserve(unplaced);
        for (int nb : g.adjacency[hv]) {
          if (!phi.used[nb]) {
            slots.push_back(nb);
            if (static_cast<int>(slots.size()) == unplaced) break;
          }
        }
        if (static_cast<int>(slots.size()) < unplaced) {
          res.stuck_at = v;
          return res;
        }
        int next_slot = 0;
        for (int c : f.adjacency[v]) {
          if (!visited[c] && !phi.is_mapped(c)) phi.assign(c, slots[next_slot++]);
        }
      }
      for (int c : f.adjacency[v]) {
        if (!visited[c]) {
          visited[c] = 1;
          queue.push_back(c);
        }
      }
    }
  }
  res.embedding = std::move(phi);
  return res;
}

inline GreedyResult greedy_embed(const Forest& f, const Graph& g) {
  return greedy_embed(f, g, Embedding::empty(f.n, g.n));
}

}  // namespace treembed
