#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "treembed/graph.hpp"

namespace treembed {

// ln Pr[G(n,p) has a dominating set of size k] upper bound:
//   ln [ C(n,k) * (1 - (1-p)^k)^(n-k) ]
// evaluated in log space throughout: lgamma for the binomial, log1p/expm1
// for the inner bracket, so the result stays accurate when the probability
// underflows double range (values around -10^3 are routine).
inline double union_bound_log(int n, int k, double p) {
  if (n < 1) throw std::invalid_argument("union_bound_log: n must be >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("union_bound_log: need 1 <= k <= n");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("union_bound_log: need 0 < p < 1");
  const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  if (k == n) return log_binom;  // empty product: every vertex is in the set
  const double log_q = k * std::log1p(-p);   // ln (1-p)^k
  const double inner = -std::expm1(log_q);   // 1 - (1-p)^k, exact near 0 and 1
  return log_binom + (n - k) * std::log(inner);
}

enum class DomAnswer { yes, no, inconclusive };
enum class DomMethod { exact, greedy_only };

struct DominationCertificate {
  DomAnswer answer = DomAnswer::inconclusive;
  DomMethod method = DomMethod::exact;
  std::vector<int> witness;  // dominating set when answer == yes
  std::uint64_t nodes_explored = 0;
};

struct DominationOptions {
  int exact_limit = 64;                    // bitmask width; beyond it only greedy runs
  std::uint64_t node_budget = 10'000'000;  // branch-and-bound node cap
};

// Independent checker used by tests and by the certificate consumers.
inline bool is_dominating_set(const Graph& g, const std::vector<int>& set) {
  std::vector<char> covered(g.n, 0);
  for (int v : set) {
    if (v < 0 || v >= g.n) return false;
    covered[v] = 1;
    for (int nb : g.adjacency[v]) covered[nb] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

namespace detail {

// Classic greedy: repeatedly take the vertex covering the most uncovered
// vertices (ties to the lower label). Returns the full greedy set.
inline std::vector<int> greedy_dominating_set(const Graph& g) {
  std::vector<char> covered(g.n, 0);
  int uncovered = g.n;
  std::vector<int> set;
  while (uncovered > 0) {
    int best = -1, best_gain = -1;
    for (int v = 0; v < g.n; ++v) {
      int gain = !covered[v];
      for (int nb : g.adjacency[v]) gain += !covered[nb];
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    set.push_back(best);
    if (!covered[best]) {
      covered[best] = 1;
      --uncovered;
    }
    for (int nb : g.adjacency[best]) {
      if (!covered[nb]) {
        covered[nb] = 1;
        --uncovered;
      }
    }
  }
  return set;
}

struct DomSearch {
  int n = 0;
  int k = 0;
  std::vector<std::uint64_t> closed;            // closed neighborhood masks
  std::vector<std::vector<int>> coverers_of;    // who can cover v (static)
  std::uint64_t all = 0;
  std::uint64_t budget = 0;
  std::uint64_t nodes = 0;
  bool budget_hit = false;
  int max_closed = 0;  // largest closed-neighborhood size (cheap lower bound)
  std::vector<int> current, witness;
  bool found = false;

  // Branch on the uncovered vertex with the fewest candidate coverers;
  // candidates ordered by fresh coverage (descending, label ascending).
  void dfs(std::uint64_t covered, int used) {
    if (budget_hit || found) return;
    if (++nodes > budget) {
      budget_hit = true;
      return;
    }
    if (covered == all) {
      witness = current;
      found = true;
      return;
    }
    if (used == k) return;
    const std::uint64_t uncovered = all & ~covered;
    const int need = __builtin_popcountll(uncovered);
    if (static_cast<long long>(k - used) * max_closed < need) return;

    // The uncovered vertex with the fewest coverers (most constrained).
    int branch_v = -1;
    std::size_t branch_opts = static_cast<std::size_t>(n) + 1;
    for (int v = 0; v < n; ++v) {
      if (((uncovered >> v) & 1) && coverers_of[v].size() < branch_opts) {
        branch_opts = coverers_of[v].size();
        branch_v = v;
      }
    }
    std::vector<std::pair<int, int>> cands;  // (-fresh coverage, label)
    cands.reserve(coverers_of[branch_v].size());
    for (int c : coverers_of[branch_v]) {
      cands.emplace_back(-__builtin_popcountll(closed[c] & uncovered), c);
    }
    std::sort(cands.begin(), cands.end());
    for (const auto& [neg_gain, c] : cands) {
      current.push_back(c);
      dfs(covered | closed[c], used + 1);
      current.pop_back();
      if (budget_hit || found) return;
    }
  }
};

}  // namespace detail

// Does G have a dominating set of size <= k? Exact branch-and-bound over
// 64-bit coverage masks for n <= exact_limit (subject to the node budget);
// larger graphs get the greedy upper bound only, which can answer "yes" but
// never "no".
inline DominationCertificate has_dominating_set(const Graph& g, int k,
                                                const DominationOptions& opt = {}) {
  if (k < 1) throw std::invalid_argument("has_dominating_set: k must be >= 1");
  if (g.n < 1) throw std::invalid_argument("has_dominating_set: graph must be nonempty");
  DominationCertificate cert;

  const std::vector<int> greedy = detail::greedy_dominating_set(g);
  if (static_cast<int>(greedy.size()) <= k) {
    cert.answer = DomAnswer::yes;
    cert.method = g.n <= opt.exact_limit ? DomMethod::exact : DomMethod::greedy_only;
    cert.witness = greedy;
    return cert;
  }
  if (g.n > opt.exact_limit) {
    cert.answer = DomAnswer::inconclusive;
    cert.method = DomMethod::greedy_only;
    return cert;
  }

  detail::DomSearch s;
  s.n = g.n;
  s.k = std::min(k, g.n);
  s.budget = opt.node_budget;
  s.closed.resize(g.n);
  s.coverers_of.assign(g.n, {});
  for (int v = 0; v < g.n; ++v) {
    std::uint64_t m = 1ull << v;
    for (int nb : g.adjacency[v]) m |= 1ull << nb;
    s.closed[v] = m;
    s.max_closed = std::max(s.max_closed, __builtin_popcountll(m));
    s.coverers_of[v].push_back(v);
    for (int nb : g.adjacency[v]) s.coverers_of[v].push_back(nb);
    std::sort(s.coverers_of[v].begin(), s.coverers_of[v].end());
  }
  s.all = (g.n == 64) ? ~0ull : ((1ull << g.n) - 1);
  s.dfs(0, 0);

  cert.method = DomMethod::exact;
  cert.nodes_explored = s.nodes;
  if (s.found) {
    cert.answer = DomAnswer::yes;
    cert.witness = s.witness;
  } else if (s.budget_hit) {
    cert.answer = DomAnswer::inconclusive;
  } else {
    cert.answer = DomAnswer::no;
  }
  return cert;
}

enum class Refutation { refuted, inconclusive };

// Theorem-2-style refutation: the near-star tree family on n vertices with
// max degree delta has a spine of k = ceil(n/(delta-1)) vertices that
// dominates the embedded image, so a host with NO dominating set of size k
// cannot contain that tree. Sound both ways it answers: "refuted" is backed
// by an exact non-domination proof.
inline Refutation refute_tndelta(const Graph& g, int n, int delta,
                                 const DominationOptions& opt = {}) {
  if (g.n != n) throw std::invalid_argument("refute_tndelta: graph must have exactly n vertices");
  if (delta < 3 || delta > n) throw std::invalid_argument("refute_tndelta: need 3 <= delta <= n");
  const int k = (n + delta - 2) / (delta - 1);
  if (k >= n) return Refutation::inconclusive;  // the whole vertex set dominates
  const DominationCertificate cert = has_dominating_set(g, k, opt);
  return cert.answer == DomAnswer::no ? Refutation::refuted : Refutation::inconclusive;
}

}  // namespace treembed
