#include "popmatch/graphkit.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

namespace popmatch::graphkit {

namespace {
constexpr int kInf = std::numeric_limits<int>::max();

std::vector<std::vector<int>> reverse_adjacency(const BipartiteGraph& g) {
  std::vector<std::vector<int>> radj(g.n_right);
  for (int u = 0; u < g.n_left; ++u) {
    for (int v : g.adj[u]) radj[v].push_back(u);
  }
  return radj;
}
}  // namespace

int BipartiteGraph::num_edges() const {
  int count = 0;
  for (const auto& list : adj) count += static_cast<int>(list.size());
  return count;
}

int PairMatching::size() const {
  int count = 0;
  for (int v : left_mate) {
    if (v >= 0) ++count;
  }
  return count;
}

PairMatching max_matching(const BipartiteGraph& g, const PairMatching* seed) {
  PairMatching m(g.n_left, g.n_right);
  if (seed) {
    assert(static_cast<int>(seed->left_mate.size()) == g.n_left);
    assert(static_cast<int>(seed->right_mate.size()) == g.n_right);
    m = *seed;
  }

  std::vector<int> dist(g.n_left);
  std::vector<int> queue;
  queue.reserve(g.n_left);
  std::vector<size_t> arc(g.n_left);
  std::vector<int> stack, chosen;

  // Phase BFS over the alternating level graph; true when some free right
  // vertex is reachable.
  auto bfs = [&]() {
    queue.clear();
    bool reachable = false;
    for (int u = 0; u < g.n_left; ++u) {
      if (m.left_mate[u] < 0) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = kInf;
      }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int v : g.adj[u]) {
        int w = m.right_mate[v];
        if (w < 0) {
          reachable = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return reachable;
  };

  // Iterative DFS along level-graph arcs; augments in place on success.
  auto try_augment = [&](int source) {
    stack.assign(1, source);
    chosen.clear();
    while (!stack.empty()) {
      int u = stack.back();
      bool advanced = false;
      while (arc[u] < g.adj[u].size()) {
        int v = g.adj[u][arc[u]++];
        int w = m.right_mate[v];
        if (w < 0) {
          chosen.push_back(v);
          for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i) {
            m.left_mate[stack[i]] = chosen[i];
            m.right_mate[chosen[i]] = stack[i];
          }
          return true;
        }
        if (dist[w] == dist[u] + 1) {
          chosen.push_back(v);
          stack.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[u] = kInf;  // dead end for this phase
        stack.pop_back();
        if (!chosen.empty()) chosen.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(arc.begin(), arc.end(), 0);
    int augmented = 0;
    for (int u = 0; u < g.n_left; ++u) {
      if (m.left_mate[u] < 0 && try_augment(u)) ++augmented;
    }
    if (augmented == 0) break;
  }
  return m;
}

std::vector<bool> critical_on_side(const BipartiteGraph& g, const PairMatching& m,
                                   Side side) {
  if (side == Side::Left) {
    std::vector<bool> reached(g.n_left, false);
    std::vector<int> queue;
    for (int u = 0; u < g.n_left; ++u) {
      if (m.left_mate[u] < 0) {
        reached[u] = true;
        queue.push_back(u);
      }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int v : g.adj[u]) {
        if (v == m.left_mate[u]) continue;
        int w = m.right_mate[v];
        assert(w >= 0 && "free-free edge contradicts a maximum matching");
        if (w >= 0 && !reached[w]) {
          reached[w] = true;
          queue.push_back(w);
        }
      }
    }
    std::vector<bool> critical(g.n_left);
    for (int u = 0; u < g.n_left; ++u) critical[u] = !reached[u];
    return critical;
  }

  auto radj = reverse_adjacency(g);
  std::vector<bool> reached(g.n_right, false);
  std::vector<int> queue;
  for (int v = 0; v < g.n_right; ++v) {
    if (m.right_mate[v] < 0) {
      reached[v] = true;
      queue.push_back(v);
    }
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int u : radj[v]) {
      if (u == m.right_mate[v]) continue;
      int w = m.left_mate[u];
      assert(w >= 0 && "free-free edge contradicts a maximum matching");
      if (w >= 0 && !reached[w]) {
        reached[w] = true;
        queue.push_back(w);
      }
    }
  }
  std::vector<bool> critical(g.n_right);
  for (int v = 0; v < g.n_right; ++v) critical[v] = !reached[v];
  return critical;
}

CriticalSets critical_vertices(const BipartiteGraph& g, const PairMatching& m) {
  return {critical_on_side(g, m, Side::Left),
          critical_on_side(g, m, Side::Right)};
}

GELabels ge_labels(const BipartiteGraph& g, const PairMatching& m) {
  GELabels labels;
  labels.left.assign(g.n_left, GEClass::Unreached);
  labels.right.assign(g.n_right, GEClass::Unreached);

  // Sweep from free left vertices: left vertices reached at even distance,
  // right vertices touched via free edges are odd.
  {
    std::vector<bool> reached(g.n_left, false);
    std::vector<int> queue;
    for (int u = 0; u < g.n_left; ++u) {
      if (m.left_mate[u] < 0) {
        reached[u] = true;
        queue.push_back(u);
      }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      labels.left[u] = GEClass::Even;
      for (int v : g.adj[u]) {
        if (v == m.left_mate[u]) continue;
        labels.right[v] = GEClass::Odd;
        int w = m.right_mate[v];
        if (w >= 0 && !reached[w]) {
          reached[w] = true;
          queue.push_back(w);
        }
      }
    }
  }

  // Symmetric sweep from free right vertices.
  {
    auto radj = reverse_adjacency(g);
    std::vector<bool> reached(g.n_right, false);
    std::vector<int> queue;
    for (int v = 0; v < g.n_right; ++v) {
      if (m.right_mate[v] < 0) {
        reached[v] = true;
        queue.push_back(v);
      }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      labels.right[v] = GEClass::Even;
      for (int u : radj[v]) {
        if (u == m.right_mate[v]) continue;
        assert(labels.left[u] != GEClass::Even && "Even/Odd classes overlap");
        labels.left[u] = GEClass::Odd;
        int w = m.left_mate[u];
        if (w >= 0 && !reached[w]) {
          reached[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return labels;
}

std::optional<std::vector<int>> alternating_exchange_path(
    const BipartiteGraph& g, const PairMatching& m, int start_right) {
  if (start_right < 0 || start_right >= g.n_right ||
      m.right_mate[start_right] < 0) {
    throw std::invalid_argument("exchange path must start at a matched job");
  }
  std::vector<int> prev_left(g.n_left, -1), prev_right(g.n_right, -1);
  std::vector<bool> seen_left(g.n_left, false), seen_right(g.n_right, false);
  seen_right[start_right] = true;

  int root = m.right_mate[start_right];
  seen_left[root] = true;
  prev_left[root] = start_right;
  std::vector<int> queue{root};

  int goal = -1;
  for (size_t head = 0; head < queue.size() && goal < 0; ++head) {
    int u = queue[head];
    for (int v : g.adj[u]) {
      if (v == m.left_mate[u] || seen_right[v]) continue;
      seen_right[v] = true;
      prev_right[v] = u;
      int w = m.right_mate[v];
      if (w < 0) {
        goal = v;
        break;
      }
      if (!seen_left[w]) {
        seen_left[w] = true;
        prev_left[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (goal < 0) return std::nullopt;

  // Walk parents back to start_right; vertices alternate right, left, ...
  std::vector<int> path;
  int v = goal;
  while (true) {
    path.push_back(v);
    if (v == start_right) break;
    int u = prev_right[v];
    path.push_back(u);
    v = prev_left[u];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

PairMatching rank_maximal(int n_left, int n_right,
                          const std::vector<RankedEdge>& edges, int max_rank) {
  std::vector<char> alive(edges.size(), 1);
  PairMatching m(n_left, n_right);
  for (int phase = 1; phase <= max_rank; ++phase) {
    BipartiteGraph g(n_left, n_right);
    for (size_t e = 0; e < edges.size(); ++e) {
      if (alive[e] && edges[e].rank <= phase) g.add_edge(edges[e].left, edges[e].right);
    }
    m = max_matching(g, &m);
    if (phase == max_rank) break;

    GELabels labels = ge_labels(g, m);
    for (size_t e = 0; e < edges.size(); ++e) {
      if (!alive[e]) continue;
      GEClass cl = labels.left[edges[e].left];
      GEClass cr = labels.right[edges[e].right];
      if (edges[e].rank > phase) {
        // Odd/Unreached vertices are matched with rank <= phase edges in
        // every rank-maximal matching; they never take a worse edge.
        if (cl != GEClass::Even || cr != GEClass::Even) alive[e] = 0;
      } else {
        // Odd-Odd and Odd-Unreached edges are in no maximum matching.
        bool odd_l = cl == GEClass::Odd;
        bool odd_r = cr == GEClass::Odd;
        if ((odd_l && cr != GEClass::Even) || (odd_r && cl != GEClass::Even)) {
          alive[e] = 0;
        }
      }
    }
  }
  return m;
}

std::vector<int> matching_signature(const PairMatching& m,
                                    const std::vector<RankedEdge>& edges,
                                    int max_rank) {
  std::vector<int> signature(max_rank + 1, 0);
  for (const auto& e : edges) {
    if (e.left < static_cast<int>(m.left_mate.size()) &&
        m.left_mate[e.left] == e.right) {
      signature[e.rank]++;
    }
  }
  return signature;
}

}  // namespace popmatch::graphkit
