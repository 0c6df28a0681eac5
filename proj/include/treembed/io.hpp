#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "treembed/graph.hpp"
#include "treembed/tree.hpp"

namespace treembed {

// Shortest decimal representation that round-trips the exact double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// --- edge lists ------------------------------------------------------------
// Format: first line "n m", then m lines "u v". Used for both graphs and
// trees (trees additionally satisfy m = n-1 and connectivity on read).

inline void write_edge_list(std::ostream& os, int n,
                            const std::vector<std::pair<int, int>>& edges) {
  os << n << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) os << u << ' ' << v << '\n';
}

inline void write_graph(std::ostream& os, const Graph& g) { write_edge_list(os, g.n, g.edges()); }
inline void write_tree(std::ostream& os, const Tree& t) { write_edge_list(os, t.n, t.edges()); }

inline std::vector<std::pair<int, int>> read_edge_list(std::istream& is, int& n) {
  long long m = 0;
  if (!(is >> n >> m)) throw std::runtime_error("edge list: malformed header (want \"n m\")");
  if (n < 0 || m < 0) throw std::runtime_error("edge list: negative header field");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    int u, v;
    if (!(is >> u >> v)) throw std::runtime_error("edge list: truncated at edge " + std::to_string(i));
    edges.emplace_back(u, v);
  }
  return edges;
}

inline Graph read_graph(std::istream& is) {
  int n = 0;
  const auto edges = read_edge_list(is, n);
  return Graph::from_edges(n, edges);
}

inline Tree read_tree(std::istream& is) {
  int n = 0;
  const auto edges = read_edge_list(is, n);
  return tree_from_edges(n, edges);
}

// --- two-round graphs ------------------------------------------------------
// Header line "n p p_prime", then the two rounds as tagged edge-list
// sections: "G1 m1" + m1 edges, "G2 m2" + m2 edges.

inline void write_two_round(std::ostream& os, const TwoRoundGraph& tr) {
  os << tr.n() << ' ' << format_double(tr.p) << ' ' << format_double(tr.p_prime) << '\n';
  const auto e1 = tr.g1.edges();
  os << "G1 " << e1.size() << '\n';
  for (const auto& [u, v] : e1) os << u << ' ' << v << '\n';
  const auto e2 = tr.g2.edges();
  os << "G2 " << e2.size() << '\n';
  for (const auto& [u, v] : e2) os << u << ' ' << v << '\n';
}

inline TwoRoundGraph read_two_round(std::istream& is) {
  TwoRoundGraph tr;
  int n = 0;
  if (!(is >> n >> tr.p >> tr.p_prime)) {
    throw std::runtime_error("two-round graph: malformed header (want \"n p p_prime\")");
  }
  for (int round = 1; round <= 2; ++round) {
    std::string tag;
    long long m = 0;
    if (!(is >> tag >> m) || tag != "G" + std::to_string(round)) {
      throw std::runtime_error("two-round graph: expected section G" + std::to_string(round));
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
      int u, v;
      if (!(is >> u >> v)) throw std::runtime_error("two-round graph: truncated section");
      edges.emplace_back(u, v);
    }
    (round == 1 ? tr.g1 : tr.g2) = Graph::from_edges(n, edges);
  }
  return tr;
}

// --- embeddings ------------------------------------------------------------
// One "tree_vertex graph_vertex" line per mapped tree vertex, sorted by
// tree vertex.

inline void write_embedding_lines(std::ostream& os, const std::vector<int>& map) {
  for (std::size_t tv = 0; tv < map.size(); ++tv) {
    if (map[tv] >= 0) os << tv << ' ' << map[tv] << '\n';
  }
}

inline std::vector<std::pair<int, int>> read_embedding_lines(std::istream& is) {
  std::vector<std::pair<int, int>> out;
  int tv, gv;
  while (is >> tv >> gv) out.emplace_back(tv, gv);
  return out;
}

// --- small file helpers ----------------------------------------------------

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class WriteFn>
void write_file(const std::string& path, WriteFn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  fn(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace treembed
