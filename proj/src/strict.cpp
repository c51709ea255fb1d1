#include "popmatch/strict.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>

#include "popmatch/graphkit.hpp"

namespace popmatch::strict {

namespace {

int single_job(const std::vector<int>& group) {
  assert(group.size() == 1);
  return group[0];
}

// min lambda over the jobs in groups [from_rank, to_rank) of x's list.
Weight lambda_range_min(const Instance& inst, int applicant, int from_rank,
                        int to_rank, const std::vector<Weight>& lambda) {
  Weight best = kLambdaInf;
  const auto& groups = inst.prefs[applicant];
  for (int r = from_rank; r < to_rank; ++r) {
    for (int j : groups[r]) best = std::min(best, lambda[j]);
  }
  return best;
}

}  // namespace

FSAssignment compute_fs(const Instance& inst, const CategoryPartition& part) {
  FSAssignment fs;
  fs.f_job.assign(inst.num_applicants(), -1);
  fs.s_job.assign(inst.num_applicants(), -1);
  fs.f_level.assign(inst.num_jobs(), 0);

  for (int ci = 0; ci < part.num_categories(); ++ci) {
    const int level = ci + 1;
    // f(x): first job not claimed by a strictly higher category. A job
    // claimed by this same category stays eligible (that is the contended
    // case).
    for (int x : part.members[ci]) {
      for (const auto& group : inst.prefs[x]) {
        int j = single_job(group);
        if (fs.f_level[j] == 0 || fs.f_level[j] == level) {
          fs.f_job[x] = j;
          fs.f_level[j] = level;
          break;
        }
      }
      assert(fs.f_job[x] >= 0 && "last resort guarantees an f-job");
    }
    // s(x): first job that is no f-job of category <= level. Skipped when
    // f(x) is the last resort, the one case with nothing after it.
    for (int x : part.members[ci]) {
      if (fs.f_job[x] == inst.last_resort_of(x)) continue;
      for (const auto& group : inst.prefs[x]) {
        int j = single_job(group);
        if (fs.f_level[j] == 0) {
          fs.s_job[x] = j;
          break;
        }
      }
      assert(fs.s_job[x] >= 0 && "last resort guarantees a second job");
    }
  }
  return fs;
}

Weight lambda_min(const Instance& inst, int applicant, int bound_job,
                  const std::vector<Weight>& lambda) {
  auto bound = inst.rank_of(applicant, bound_job);
  if (!bound) throw std::invalid_argument("lambda_min bound not on the list");
  return lambda_range_min(inst, applicant, 0, *bound, lambda);
}

std::optional<ReducedGraph> prune(const Instance& inst,
                                  const CategoryPartition& part,
                                  const FSAssignment& fs) {
  const int k = part.num_categories();
  ReducedGraph out;
  out.lambda.assign(inst.num_jobs(), kLambdaInf);
  out.f_edge_alive.assign(inst.num_applicants(), true);
  out.s_edge_alive.assign(inst.num_applicants(), true);

  for (int x : part.members[0]) out.lambda[fs.f_job[x]] = part.weights[0];

  std::vector<int> order;  // f_i-jobs in first-contender order
  std::vector<std::vector<int>> contenders(inst.num_jobs());
  for (int ci = 1; ci < k; ++ci) {
    const Weight wi = part.weights[ci];
    for (int x : part.members[ci]) {
      if (lambda_min(inst, x, fs.f_job[x], out.lambda) < wi) return std::nullopt;
    }
    order.clear();
    for (int x : part.members[ci]) {
      int p = fs.f_job[x];
      if (contenders[p].empty()) order.push_back(p);
      contenders[p].push_back(x);
    }
    for (int p : order) {
      auto& who = contenders[p];
      if (who.size() == 1) {
        Weight lm = lambda_min(inst, who[0], fs.f_job[who[0]], out.lambda);
        out.lambda[p] = lm == kLambdaInf ? wi : std::min(wi, lm - wi);
        assert(out.lambda[p] >= 0);
      } else {
        out.lambda[p] = wi;
        for (int x : who) {
          if (lambda_min(inst, x, p, out.lambda) < 2 * wi) {
            out.f_edge_alive[x] = false;
            out.pruned_edges.emplace_back(x, p);
          }
        }
      }
      who.clear();
    }
  }

  // Final pass: an s-edge dies when some job strictly between f(x) and s(x)
  // can be freed for less than w(x).
  for (int x = 0; x < inst.num_applicants(); ++x) {
    if (fs.s_job[x] < 0) continue;
    int f_rank = *inst.rank_of(x, fs.f_job[x]);
    int s_rank = *inst.rank_of(x, fs.s_job[x]);
    if (lambda_range_min(inst, x, f_rank + 1, s_rank, out.lambda) <
        inst.weights[x]) {
      out.s_edge_alive[x] = false;
      out.pruned_edges.emplace_back(x, fs.s_job[x]);
    }
  }
  return out;
}

std::optional<Matching> find_well_formed(const Instance& inst,
                                         const CategoryPartition& part,
                                         const FSAssignment& fs,
                                         const ReducedGraph& reduced) {
  (void)part;
  const int n = inst.num_applicants();
  const int num_jobs = inst.num_jobs();

  // Surviving edges per applicant: edge[0] = f-edge, edge[1] = s-edge.
  // s-edges aimed at somebody's f-job are dropped up front, so afterwards
  // f-jobs and s-jobs are disjoint.
  std::vector<std::array<int, 2>> edge(n, {-1, -1});
  std::vector<int> degree(n, 0);
  std::vector<std::vector<int>> users(num_jobs);  // applicants per job
  for (int x = 0; x < n; ++x) {
    if (reduced.f_edge_alive[x]) {
      edge[x][0] = fs.f_job[x];
      users[fs.f_job[x]].push_back(x);
      ++degree[x];
    }
    int s = fs.s_job[x];
    if (s >= 0 && reduced.s_edge_alive[x] && fs.f_level[s] == 0) {
      edge[x][1] = s;
      users[s].push_back(x);
      ++degree[x];
    }
  }

  std::vector<int> job_of(n, -1), holder(num_jobs, -1);
  std::vector<bool> applicant_done(n, false), job_gone(num_jobs, false);

  // Forced assignments: eliminate degree-1 applicants, cascading as jobs
  // disappear.
  std::vector<int> queue;
  for (int x = 0; x < n; ++x) {
    if (degree[x] == 0) return std::nullopt;
    if (degree[x] == 1) queue.push_back(x);
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    if (applicant_done[x]) continue;
    int p = -1;
    for (int j : edge[x]) {
      if (j >= 0 && !job_gone[j]) p = j;
    }
    assert(p >= 0);
    applicant_done[x] = true;
    job_of[x] = p;
    holder[p] = x;
    job_gone[p] = true;
    for (int y : users[p]) {
      if (y == x || applicant_done[y]) continue;
      if (--degree[y] == 0) return std::nullopt;
      queue.push_back(y);
    }
  }

  // Residual graph: every remaining applicant has exactly one f-edge and one
  // s-edge, and the two job families are disjoint.
  std::vector<int> residual;
  for (int x = 0; x < n; ++x) {
    if (!applicant_done[x]) residual.push_back(x);
  }
  if (!residual.empty()) {
    graphkit::BipartiteGraph g(static_cast<int>(residual.size()), num_jobs);
    for (size_t i = 0; i < residual.size(); ++i) {
      for (int j : edge[residual[i]]) {
        assert(j >= 0 && !job_gone[j]);
        g.add_edge(static_cast<int>(i), j);
      }
    }
    auto m = graphkit::max_matching(g);
    if (m.size() != static_cast<int>(residual.size())) return std::nullopt;

    // Repair: a free f-job pulls one of its contenders off its s-job. The
    // freed job is an s-job, never an f-job, so free f-jobs only decrease.
    for (size_t i = 0; i < residual.size(); ++i) {
      int x = residual[i];
      job_of[x] = m.left_mate[i];
      holder[m.left_mate[i]] = x;
    }
    for (int p = 0; p < num_jobs; ++p) {
      if (fs.f_level[p] == 0 || job_gone[p] || holder[p] >= 0) continue;
      for (int y : users[p]) {
        if (!applicant_done[y] && edge[y][0] == p && job_of[y] != p) {
          holder[job_of[y]] = -1;
          job_of[y] = p;
          holder[p] = y;
          break;
        }
      }
    }
  }

  // A well-formed matching must cover every f-job along an f-edge.
  for (int p = 0; p < num_jobs; ++p) {
    if (fs.f_level[p] == 0) continue;
    if (holder[p] < 0 || fs.f_job[holder[p]] != p) return std::nullopt;
  }

  Matching result(n);
  for (int x = 0; x < n; ++x) {
    assert(job_of[x] >= 0);
    result.job_of[x] = inst.is_last_resort(job_of[x]) ? -1 : job_of[x];
  }
  return result;
}

std::optional<Matching> solve(const Instance& raw) {
  if (!raw.is_strict()) {
    throw std::invalid_argument("strict solver requires a strict instance");
  }
  validate(raw);
  Instance inst = augment_with_last_resorts(raw);
  CategoryPartition part = categorize(inst);
  FSAssignment fs = compute_fs(inst, part);
  auto reduced = prune(inst, part, fs);
  if (!reduced) return std::nullopt;
  return find_well_formed(inst, part, fs, *reduced);
}

}  // namespace popmatch::strict
