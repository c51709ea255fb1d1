#include "popmatch/ties.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace popmatch::ties {

namespace {

// min lambda over the jobs in groups [0, to_rank) of x's list.
Weight rank_prefix_min(const Instance& inst, int applicant, int to_rank,
                       const std::vector<Weight>& lambda) {
  Weight best = kLambdaInf;
  const auto& groups = inst.prefs[applicant];
  for (int r = 0; r < to_rank; ++r) {
    for (int j : groups[r]) best = std::min(best, lambda[j]);
  }
  return best;
}

bool contains(const std::vector<int>& xs, int v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

}  // namespace

LayeredState build_layers(const Instance& inst, const CategoryPartition& part) {
  const int n = inst.num_applicants();
  const int num_jobs = inst.num_jobs();
  const int k = part.num_categories();

  LayeredState st;
  st.f_set.resize(n);
  st.f_rank.assign(n, -1);
  st.s_set.resize(n);
  st.s_rank.assign(n, -1);
  st.first_critical_layer.assign(num_jobs, -1);
  st.job_contenders.resize(num_jobs);

  graphkit::BipartiteGraph g(n, num_jobs);
  graphkit::PairMatching m(n, num_jobs);

  for (int ci = 0; ci < k; ++ci) {
    // f(x): best-rank jobs not critical in any earlier layer.
    for (int x : part.members[ci]) {
      const auto& groups = inst.prefs[x];
      for (int r = 0; r < static_cast<int>(groups.size()); ++r) {
        std::vector<int> eligible;
        for (int j : groups[r]) {
          if (st.first_critical_layer[j] < 0) eligible.push_back(j);
        }
        if (!eligible.empty()) {
          st.f_set[x] = std::move(eligible);
          st.f_rank[x] = r;
          break;
        }
      }
      assert(!st.f_set[x].empty() && "last resort guarantees an f-set");
      for (int j : st.f_set[x]) {
        g.add_edge(x, j);
        st.job_contenders[j].push_back(x);
      }
    }

    m = graphkit::max_matching(g, &m);
    auto crit = graphkit::critical_vertices(g, m);
    st.layer_matching.push_back(m);
    st.layer_size.push_back(m.size());
    for (int j = 0; j < num_jobs; ++j) {
      if (crit.right_critical[j] && st.first_critical_layer[j] < 0) {
        st.first_critical_layer[j] = ci;
      }
    }

    // s(x): best-rank jobs not critical in any layer up to this one; empty
    // exactly when x itself is critical here.
    for (int x : part.members[ci]) {
      if (crit.left_critical[x]) continue;
      const auto& groups = inst.prefs[x];
      for (int r = 0; r < static_cast<int>(groups.size()); ++r) {
        std::vector<int> eligible;
        for (int j : groups[r]) {
          if (st.first_critical_layer[j] < 0) eligible.push_back(j);
        }
        if (!eligible.empty()) {
          st.s_set[x] = std::move(eligible);
          st.s_rank[x] = r;
          break;
        }
      }
      assert(!st.s_set[x].empty() && "last resort guarantees an s-set");
      assert(st.s_rank[x] != st.f_rank[x] && "f and s sets must be disjoint");
    }

    st.app_critical.push_back(std::move(crit.left_critical));
    st.job_critical.push_back(std::move(crit.right_critical));
  }
  return st;
}

Weight lambda_equiv(const Instance& inst, int applicant, const LayeredState& layers,
                    const std::vector<Weight>& lambda) {
  Weight best = kLambdaInf;
  const auto& group = inst.prefs[applicant][layers.f_rank[applicant]];
  for (int j : group) {
    if (!contains(layers.f_set[applicant], j)) best = std::min(best, lambda[j]);
  }
  return best;
}

std::optional<PruneResult> prune(const Instance& inst,
                                 const CategoryPartition& part,
                                 const LayeredState& layers) {
  const int n = inst.num_applicants();
  const int num_jobs = inst.num_jobs();
  const int k = part.num_categories();

  PruneResult out;
  out.lambda.assign(num_jobs, kLambdaInf);
  out.f_edges_alive.assign(n, true);
  out.s_edges_alive.assign(n, true);

  for (int j = 0; j < num_jobs; ++j) {
    if (layers.job_critical[0][j]) out.lambda[j] = part.weights[0];
  }

  // The promotion keys of an applicant only involve labels of layers before
  // its own, so they are fixed from its layer onward.
  std::vector<Weight> key_min_f(n, kLambdaInf), key_equiv(n, kLambdaInf);
  for (int x : part.members[0]) {
    key_min_f[x] = rank_prefix_min(inst, x, layers.f_rank[x], out.lambda);
    key_equiv[x] = lambda_equiv(inst, x, layers, out.lambda);
    assert(key_min_f[x] == kLambdaInf && key_equiv[x] == kLambdaInf);
  }

  std::vector<char> visited_app(n), visited_job(num_jobs);
  std::vector<std::pair<Weight, int>> sources;
  std::vector<int> queue;

  auto prune_f_edges = [&](int x) {
    if (!out.f_edges_alive[x]) return;
    out.f_edges_alive[x] = false;
    for (int p : layers.f_set[x]) out.pruned_edges.emplace_back(x, p);
  };

  for (int ci = 1; ci < k; ++ci) {
    const Weight wi = part.weights[ci];
    for (int x : part.members[ci]) {
      key_min_f[x] = rank_prefix_min(inst, x, layers.f_rank[x], out.lambda);
      key_equiv[x] = lambda_equiv(inst, x, layers, out.lambda);
    }
    // A better job than f(x) freeable below w_i sinks the whole instance.
    for (int x : part.members[ci]) {
      if (key_min_f[x] < wi) return std::nullopt;
    }
    // Non-critical applicants whose f-edges can be displaced too cheaply.
    for (int cj = 0; cj <= ci; ++cj) {
      const Weight wj = part.weights[cj];
      for (int x : part.members[cj]) {
        if (layers.app_critical[ci][x]) continue;
        if ((key_min_f[x] != kLambdaInf && key_min_f[x] < wj + wi) ||
            key_equiv[x] < wi) {
          prune_f_edges(x);
        }
      }
    }

    // Label jobs that turned critical in this layer. Hungarian trees are
    // grown from critical matched applicants in ascending key order with
    // global marks, so the first tree to reach a job carries its minimum.
    const auto& m = layers.layer_matching[ci];
    sources.clear();
    for (int x = 0; x < n; ++x) {
      if (!layers.app_critical[ci][x]) continue;
      assert(m.left_mate[x] >= 0 && "critical applicants are matched");
      Weight key = key_equiv[x];
      if (key_min_f[x] != kLambdaInf) {
        key = std::min(key, key_min_f[x] - inst.weights[x]);
      }
      sources.emplace_back(key, x);
    }
    std::sort(sources.begin(), sources.end());
    std::fill(visited_app.begin(), visited_app.end(), 0);
    std::fill(visited_job.begin(), visited_job.end(), 0);
    for (const auto& [key, source] : sources) {
      if (visited_app[source]) continue;
      visited_app[source] = 1;
      queue.assign(1, source);
      for (size_t head = 0; head < queue.size(); ++head) {
        int y = queue[head];
        int q = m.left_mate[y];
        assert(q >= 0 && !visited_job[q]);
        visited_job[q] = 1;
        if (layers.first_critical_layer[q] == ci) {
          out.lambda[q] = std::min(wi, key);
        }
        for (int u : layers.job_contenders[q]) {
          if (part.category_of[u] > ci) break;  // contenders are layer-ordered
          if (u == y || visited_app[u]) continue;
          visited_app[u] = 1;
          if (m.left_mate[u] >= 0) queue.push_back(u);
        }
      }
    }
    // Unreached newly-critical jobs still admit a demotion ending in C_i.
    for (int j = 0; j < num_jobs; ++j) {
      if (layers.first_critical_layer[j] == ci && out.lambda[j] == kLambdaInf) {
        out.lambda[j] = wi;
      }
    }
  }

  // s-edges undercut by a promotion path out of any strictly better job.
  for (int x = 0; x < n; ++x) {
    if (layers.s_set[x].empty()) continue;
    if (rank_prefix_min(inst, x, layers.s_rank[x], out.lambda) < inst.weights[x]) {
      out.s_edges_alive[x] = false;
      for (int p : layers.s_set[x]) out.pruned_edges.emplace_back(x, p);
    }
  }
  return out;
}

std::optional<Matching> find_well_formed(const Instance& inst,
                                         const CategoryPartition& part,
                                         const LayeredState& layers,
                                         const PruneResult& pruned,
                                         bool max_cardinality) {
  const int n = inst.num_applicants();
  const int num_jobs = inst.num_jobs();
  const int k = part.num_categories();
  const int max_rank = max_cardinality ? k + 2 : k + 1;

  std::vector<graphkit::RankedEdge> edges;
  for (int x = 0; x < n; ++x) {
    if (!pruned.f_edges_alive[x]) continue;
    for (int p : layers.f_set[x]) edges.push_back({x, p, part.category_of[x] + 1});
  }
  for (int x = 0; x < n; ++x) {
    const auto& s = layers.s_set[x];
    if (s.empty() || !pruned.s_edges_alive[x]) continue;
    int rank = k + 1;
    if (max_cardinality && s.size() == 1 && s[0] == inst.last_resort_of(x)) {
      rank = k + 2;
    }
    for (int p : s) edges.push_back({x, p, rank});
  }

  auto m = graphkit::rank_maximal(n, num_jobs, edges, max_rank);
  if (m.size() != n) return std::nullopt;

  // Maximum in every G_i: count matched f-edges per category and compare
  // prefix sums against the stored layer maxima.
  std::vector<int> f_matched(k, 0);
  for (int x = 0; x < n; ++x) {
    if (contains(layers.f_set[x], m.left_mate[x])) {
      ++f_matched[part.category_of[x]];
    } else {
      assert(contains(layers.s_set[x], m.left_mate[x]));
    }
  }
  int prefix = 0;
  for (int ci = 0; ci < k; ++ci) {
    prefix += f_matched[ci];
    if (prefix != layers.layer_size[ci]) return std::nullopt;
  }

  Matching result(n);
  for (int x = 0; x < n; ++x) {
    int p = m.left_mate[x];
    result.job_of[x] = inst.is_last_resort(p) ? -1 : p;
  }
  return result;
}

namespace {
std::optional<Matching> solve_impl(const Instance& raw, bool max_cardinality) {
  validate(raw);
  Instance inst = augment_with_last_resorts(raw);
  CategoryPartition part = categorize(inst);
  LayeredState layers = build_layers(inst, part);
  auto pruned = prune(inst, part, layers);
  if (!pruned) return std::nullopt;
  return find_well_formed(inst, part, layers, *pruned, max_cardinality);
}
}  // namespace

std::optional<Matching> solve(const Instance& raw) { return solve_impl(raw, false); }

std::optional<Matching> solve_max_cardinality(const Instance& raw) {
  return solve_impl(raw, true);
}

}  // namespace popmatch::ties
