#include "popmatch/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace popmatch::oracle {

namespace {

constexpr int kWorstRank = std::numeric_limits<int>::max() / 2;

// Flat list of an applicant's real job choices paired with their rank.
using Choices = std::vector<std::pair<int, int>>;

std::vector<Choices> choice_table(const Instance& inst) {
  std::vector<Choices> table(inst.num_applicants());
  for (int x = 0; x < inst.num_applicants(); ++x) {
    const auto& groups = inst.prefs[x];
    for (int r = 0; r < static_cast<int>(groups.size()); ++r) {
      for (int j : groups[r]) {
        if (!inst.is_last_resort(j)) table[x].emplace_back(j, r);
      }
    }
  }
  return table;
}

// rank_table[x][j] over all jobs; last resorts and unlisted jobs rank worst.
std::vector<std::vector<int>> rank_table(const Instance& inst) {
  std::vector<std::vector<int>> table(
      inst.num_applicants(), std::vector<int>(inst.num_jobs(), kWorstRank));
  for (int x = 0; x < inst.num_applicants(); ++x) {
    const auto& groups = inst.prefs[x];
    for (int r = 0; r < static_cast<int>(groups.size()); ++r) {
      for (int j : groups[r]) {
        if (!inst.is_last_resort(j)) table[x][j] = r;
      }
    }
  }
  return table;
}

// Depth-first enumeration over applicants in index order; each applicant
// takes a free listed job or its last resort. fn returns false to stop.
template <typename Fn>
void for_each_assignment(const Instance& inst, const std::vector<Choices>& table,
                         Fn&& fn) {
  const int n = inst.num_applicants();
  std::vector<int> job_of(n, -1);
  std::vector<char> taken(inst.num_real_jobs, 0);

  auto rec = [&](auto&& self, int x) -> bool {
    if (x == n) return fn(job_of);
    for (auto [j, rank] : table[x]) {
      if (taken[j]) continue;
      taken[j] = 1;
      job_of[x] = j;
      bool keep_going = self(self, x + 1);
      taken[j] = 0;
      if (!keep_going) return false;
    }
    job_of[x] = inst.augmented ? inst.last_resort_of(x) : -1;
    bool keep_going = self(self, x + 1);
    job_of[x] = -1;
    return keep_going;
  };
  rec(rec, 0);
}

void check_guard(const Instance& inst, std::int64_t limit) {
  if (enumeration_bound(inst) > limit) {
    throw std::length_error("instance too large for brute-force enumeration");
  }
}

Weight satisfaction_against(const std::vector<int>& candidate,
                            const std::vector<int>& base_rank,
                            const std::vector<std::vector<int>>& ranks,
                            const std::vector<Weight>& weights) {
  Weight total = 0;
  for (size_t x = 0; x < candidate.size(); ++x) {
    int j = candidate[x];
    int r = j < 0 ? kWorstRank : ranks[x][j];
    if (r < base_rank[x]) {
      total += weights[x];
    } else if (r > base_rank[x]) {
      total -= weights[x];
    }
  }
  return total;
}

std::vector<int> base_ranks(const Matching& m, const Instance& inst,
                            const std::vector<std::vector<int>>& ranks) {
  std::vector<int> base(inst.num_applicants());
  for (int x = 0; x < inst.num_applicants(); ++x) {
    int j = m.job_of[x];
    base[x] = j < 0 ? kWorstRank : ranks[x][j];
  }
  return base;
}

// Cheap beater hunt: promote one applicant to a strictly better job and drop
// the current holder to its last resort. Catches most non-popular matchings
// without a full scan.
bool beaten_by_single_promotion(const Matching& m, const Instance& inst,
                                const std::vector<Choices>& table,
                                const std::vector<int>& base_rank) {
  std::vector<int> holder(inst.num_real_jobs, -1);
  for (int x = 0; x < inst.num_applicants(); ++x) {
    int j = m.job_of[x];
    if (j >= 0 && !inst.is_last_resort(j)) holder[j] = x;
  }
  for (int x = 0; x < inst.num_applicants(); ++x) {
    for (auto [j, rank] : table[x]) {
      if (rank >= base_rank[x]) continue;
      Weight delta = inst.weights[x];
      if (holder[j] >= 0) delta -= inst.weights[holder[j]];
      if (delta > 0) return true;
    }
  }
  return false;
}

}  // namespace

std::int64_t enumeration_bound(const Instance& inst) {
  const std::int64_t cap = std::numeric_limits<std::int64_t>::max();
  std::int64_t bound = 1;
  for (int x = 0; x < inst.num_applicants(); ++x) {
    std::int64_t base = inst.num_real_jobs + 1;
    if (bound > cap / base) return cap;
    bound *= base;
  }
  return bound;
}

std::vector<Matching> enumerate_matchings(const Instance& inst, std::int64_t limit) {
  check_guard(inst, limit);
  validate(inst);
  auto table = choice_table(inst);
  std::vector<Matching> out;
  for_each_assignment(inst, table, [&](const std::vector<int>& job_of) {
    Matching m;
    m.job_of = job_of;
    out.push_back(std::move(m));
    return true;
  });
  return out;
}

PopularityResult is_popular(const Matching& m, const Instance& inst,
                            std::int64_t limit) {
  check_guard(inst, limit);
  validate_matching(m, inst);
  auto table = choice_table(inst);
  auto ranks = rank_table(inst);
  auto base = base_ranks(m, inst, ranks);

  PopularityResult result;
  Weight best = std::numeric_limits<Weight>::min();
  for_each_assignment(inst, table, [&](const std::vector<int>& job_of) {
    Weight s = satisfaction_against(job_of, base, ranks, inst.weights);
    if (s > best) {
      best = s;
      result.witness.job_of = job_of;
    }
    return true;
  });
  result.witness_satisfaction = best;
  result.popular = best <= 0;
  return result;
}

bool popular_verdict(const Matching& m, const Instance& inst, std::int64_t limit) {
  check_guard(inst, limit);
  auto table = choice_table(inst);
  auto ranks = rank_table(inst);
  auto base = base_ranks(m, inst, ranks);
  if (beaten_by_single_promotion(m, inst, table, base)) return false;

  bool popular = true;
  for_each_assignment(inst, table, [&](const std::vector<int>& job_of) {
    if (satisfaction_against(job_of, base, ranks, inst.weights) > 0) {
      popular = false;
      return false;
    }
    return true;
  });
  return popular;
}

std::vector<Matching> all_popular(const Instance& inst, std::int64_t limit) {
  std::vector<Matching> out;
  for (auto& m : enumerate_matchings(inst, limit)) {
    if (popular_verdict(m, inst, limit)) out.push_back(std::move(m));
  }
  return out;
}

bool is_well_formed(const Matching& m, const Instance& inst,
                    const strict::FSAssignment& fs) {
  assert(inst.augmented);
  std::vector<int> holder(inst.num_jobs(), -1);
  for (int x = 0; x < inst.num_applicants(); ++x) {
    int j = m.job_of[x] < 0 ? inst.last_resort_of(x) : m.job_of[x];
    holder[j] = x;
    if (j != fs.f_job[x] && j != fs.s_job[x]) return false;
  }
  for (int p = 0; p < inst.num_jobs(); ++p) {
    if (fs.f_level[p] == 0) continue;
    if (holder[p] < 0 || fs.f_job[holder[p]] != p) return false;
  }
  return true;
}

bool is_well_formed(const Matching& m, const Instance& inst,
                    const CategoryPartition& part,
                    const ties::LayeredState& layers) {
  assert(inst.augmented);
  const int k = part.num_categories();
  std::vector<int> f_matched(k, 0);
  for (int x = 0; x < inst.num_applicants(); ++x) {
    int j = m.job_of[x] < 0 ? inst.last_resort_of(x) : m.job_of[x];
    bool in_f = std::find(layers.f_set[x].begin(), layers.f_set[x].end(), j) !=
                layers.f_set[x].end();
    if (in_f) {
      ++f_matched[part.category_of[x]];
    } else if (std::find(layers.s_set[x].begin(), layers.s_set[x].end(), j) ==
               layers.s_set[x].end()) {
      return false;
    }
  }
  int prefix = 0;
  for (int ci = 0; ci < k; ++ci) {
    prefix += f_matched[ci];
    if (prefix != layers.layer_size[ci]) return false;
  }
  return true;
}

}  // namespace popmatch::oracle
