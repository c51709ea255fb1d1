#pragma once

// Test-only reference oracles. Deliberately naive and structurally unrelated
// to the library algorithms they check: bitmask dynamic programs and
// delete-and-recompute, no augmenting paths.

#include <cstdint>
#include <map>
#include <vector>

#include "popmatch/graphkit.hpp"

namespace brute {

using popmatch::graphkit::BipartiteGraph;
using popmatch::graphkit::RankedEdge;

/// Maximum matching size by DP over (left index, used-right bitmask).
/// Requires n_right <= 20.
inline int max_matching_size(const BipartiteGraph& g) {
  std::vector<std::vector<int>> memo(
      g.n_left + 1, std::vector<int>(std::size_t{1} << g.n_right, -1));
  auto rec = [&](auto&& self, int i, std::uint32_t mask) -> int {
    if (i == g.n_left) return 0;
    int& slot = memo[i][mask];
    if (slot >= 0) return slot;
    int best = self(self, i + 1, mask);
    for (int j : g.adj[i]) {
      if (!(mask >> j & 1)) {
        best = std::max(best, 1 + self(self, i + 1, mask | (1u << j)));
      }
    }
    return slot = best;
  };
  return rec(rec, 0, 0);
}

/// v is critical iff removing it shrinks the maximum matching.
inline bool critical_by_deletion(const BipartiteGraph& g, bool left_side, int v) {
  BipartiteGraph h(g.n_left, g.n_right);
  for (int u = 0; u < g.n_left; ++u) {
    if (left_side && u == v) continue;
    for (int j : g.adj[u]) {
      if (!left_side && j == v) continue;
      h.add_edge(u, j);
    }
  }
  return max_matching_size(h) < max_matching_size(g);
}

/// Lexicographically maximum signature over all matchings, by DP.
/// signature[r] = number of rank-r matched edges, index 0 unused.
inline std::vector<int> lex_max_signature(int n_left, int n_right,
                                          const std::vector<RankedEdge>& edges,
                                          int max_rank) {
  std::vector<std::vector<std::pair<int, int>>> adj(n_left);  // (right, rank)
  for (const auto& e : edges) adj[e.left].emplace_back(e.right, e.rank);
  (void)n_right;

  std::map<std::pair<int, std::uint32_t>, std::vector<int>> memo;
  auto rec = [&](auto&& self, int i, std::uint32_t mask) -> std::vector<int> {
    if (i == n_left) return std::vector<int>(max_rank + 1, 0);
    auto key = std::make_pair(i, mask);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<int> best = self(self, i + 1, mask);
    for (auto [j, r] : adj[i]) {
      if (mask >> j & 1) continue;
      std::vector<int> cand = self(self, i + 1, mask | (1u << j));
      ++cand[r];
      if (std::lexicographical_compare(best.begin() + 1, best.end(),
                                       cand.begin() + 1, cand.end())) {
        best = std::move(cand);
      }
    }
    memo.emplace(key, best);
    return best;
  };
  return rec(rec, 0, 0);
}

}  // namespace brute
