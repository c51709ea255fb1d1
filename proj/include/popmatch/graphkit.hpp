#pragma once

#include <optional>
#include <vector>

namespace popmatch::graphkit {

/// Bipartite graph between a "left" side (applicants) and a "right" side
/// (jobs). Adjacency is stored left -> right; lists keep insertion order,
/// which fixes all tie-breaking downstream.
struct BipartiteGraph {
  int n_left = 0;
  int n_right = 0;
  std::vector<std::vector<int>> adj;

  BipartiteGraph() = default;
  BipartiteGraph(int left, int right) : n_left(left), n_right(right), adj(left) {}

  void add_edge(int left, int right) { adj[left].push_back(right); }
  int num_edges() const;
};

/// Mate arrays for both sides; -1 = free.
struct PairMatching {
  std::vector<int> left_mate;
  std::vector<int> right_mate;

  PairMatching() = default;
  PairMatching(int n_left, int n_right)
      : left_mate(n_left, -1), right_mate(n_right, -1) {}

  int size() const;
};

/// Hopcroft-Karp maximum matching, optionally seeded. The seed must be a
/// valid matching of `g`; the result never has fewer edges than the seed.
PairMatching max_matching(const BipartiteGraph& g,
                          const PairMatching* seed = nullptr);

/// Critical vertices: matched in every maximum matching. A vertex is
/// non-critical iff it is free in `m` or reachable from a free vertex of its
/// own side by an even-length alternating path (Gallai-Edmonds). `m` must be
/// maximum in `g`.
struct CriticalSets {
  std::vector<bool> left_critical;
  std::vector<bool> right_critical;
};

enum class Side { Left, Right };

/// One multi-source alternating BFS from the free vertices of `side`;
/// returns the critical flags for that side.
std::vector<bool> critical_on_side(const BipartiteGraph& g, const PairMatching& m,
                                   Side side);

/// Both sides at once (two sweeps).
CriticalSets critical_vertices(const BipartiteGraph& g, const PairMatching& m);

/// Gallai-Edmonds classes w.r.t. a maximum matching. Even = non-critical;
/// Odd = reachable from a free vertex by an odd alternating path; Unreached
/// = neither. Even and Odd vertices are matched-or-free per the usual
/// decomposition; Odd and Unreached vertices are critical.
enum class GEClass : unsigned char { Even, Odd, Unreached };

struct GELabels {
  std::vector<GEClass> left;
  std::vector<GEClass> right;
};

GELabels ge_labels(const BipartiteGraph& g, const PairMatching& m);

/// Alternating path that starts with the matched edge at `start_right` and
/// ends at a free right vertex (an exchange path). Vertices alternate
/// right, left, right, ...; the result starts with start_right and ends with
/// the free right vertex. Returns nullopt when no such path exists.
/// Throws std::invalid_argument if start_right is unmatched.
std::optional<std::vector<int>> alternating_exchange_path(
    const BipartiteGraph& g, const PairMatching& m, int start_right);

/// An edge carrying a preference rank (1 = best).
struct RankedEdge {
  int left = 0;
  int right = 0;
  int rank = 1;
};

/// Rank-maximal matching: lexicographically maximizes the number of rank-1
/// edges, then rank-2 edges, and so on. Phase algorithm: after the phase-i
/// maximum matching, the Gallai-Edmonds classes are used to delete edges no
/// rank-maximal matching can use (higher-rank edges at Odd/Unreached
/// vertices, and Odd-Odd / Odd-Unreached edges), then rank-(i+1) edges are
/// added and the matching augmented. Matched edges are never deleted.
PairMatching rank_maximal(int n_left, int n_right,
                          const std::vector<RankedEdge>& edges, int max_rank);

/// Per-rank edge counts of a matching, index 0 unused (signature[r] = number
/// of matched edges of rank r).
std::vector<int> matching_signature(const PairMatching& m,
                                    const std::vector<RankedEdge>& edges,
                                    int max_rank);

}  // namespace popmatch::graphkit
