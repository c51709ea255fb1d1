#include "popmatch/core.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace popmatch {

namespace {

// Rank used for comparisons when an applicant holds no real job. Strictly
// worse than any listed rank.
constexpr int kUnmatchedRank = std::numeric_limits<int>::max();

int compare_rank(const Instance& inst, int applicant, int job) {
  if (job < 0) return kUnmatchedRank;
  if (inst.is_last_resort(job)) {
    if (inst.augmented && job == inst.last_resort_of(applicant)) {
      return kUnmatchedRank;
    }
    throw std::invalid_argument("matching assigns a foreign last-resort job");
  }
  auto r = inst.rank_of(applicant, job);
  if (!r) {
    throw std::invalid_argument("matching assigns applicant '" +
                                inst.applicant_ids[applicant] +
                                "' a job not on its list");
  }
  return *r;
}

}  // namespace

bool Instance::is_strict() const {
  for (const auto& groups : prefs) {
    for (const auto& g : groups) {
      if (g.size() > 1) return false;
    }
  }
  return true;
}

int Instance::last_resort_of(int applicant) const {
  if (!augmented) throw std::logic_error("instance is not augmented");
  return num_real_jobs + applicant;
}

std::optional<int> Instance::rank_of(int applicant, int job) const {
  const auto& groups = prefs[applicant];
  for (int r = 0; r < static_cast<int>(groups.size()); ++r) {
    for (int j : groups[r]) {
      if (j == job) return r;
    }
  }
  return std::nullopt;
}

void validate(const Instance& inst) {
  const int n = inst.num_applicants();
  if (static_cast<int>(inst.applicant_ids.size()) != n ||
      static_cast<int>(inst.prefs.size()) != n) {
    throw std::invalid_argument("applicant arrays have inconsistent sizes");
  }
  if (inst.num_real_jobs > inst.num_jobs()) {
    throw std::invalid_argument("num_real_jobs exceeds job table");
  }
  std::vector<char> seen(inst.num_jobs(), 0);
  for (int x = 0; x < n; ++x) {
    if (inst.weights[x] < 1) {
      throw std::invalid_argument("applicant '" + inst.applicant_ids[x] +
                                  "' has non-positive weight");
    }
    for (const auto& group : inst.prefs[x]) {
      if (group.empty()) {
        throw std::invalid_argument("empty tie group for applicant '" +
                                    inst.applicant_ids[x] + "'");
      }
      for (int j : group) {
        if (j < 0 || j >= inst.num_jobs()) {
          throw std::invalid_argument("job index out of range");
        }
        if (seen[j]) {
          throw std::invalid_argument("applicant '" + inst.applicant_ids[x] +
                                      "' lists job '" + inst.job_ids[j] +
                                      "' twice");
        }
        seen[j] = 1;
      }
    }
    for (const auto& group : inst.prefs[x]) {
      for (int j : group) seen[j] = 0;
    }
    if (inst.augmented) {
      const auto& groups = inst.prefs[x];
      if (groups.empty() || groups.back().size() != 1 ||
          groups.back()[0] != inst.last_resort_of(x)) {
        throw std::invalid_argument(
            "augmented instance must end each list with its last resort");
      }
      for (size_t g = 0; g + 1 < groups.size(); ++g) {
        for (int j : groups[g]) {
          if (inst.is_last_resort(j)) {
            throw std::invalid_argument("last resort listed before list end");
          }
        }
      }
    } else {
      for (const auto& group : inst.prefs[x]) {
        for (int j : group) {
          if (inst.is_last_resort(j)) {
            throw std::invalid_argument(
                "unaugmented instance lists a last-resort job");
          }
        }
      }
    }
  }
}

Instance augment_with_last_resorts(const Instance& inst) {
  if (inst.augmented) return inst;
  Instance out = inst;
  out.augmented = true;
  const int n = inst.num_applicants();
  out.job_ids.reserve(inst.num_jobs() + n);
  for (int x = 0; x < n; ++x) {
    out.job_ids.push_back("!" + inst.applicant_ids[x]);
    out.prefs[x].push_back({out.last_resort_of(x)});
  }
  return out;
}

CategoryPartition categorize(const Instance& inst) {
  // Distinct weights, descending; equal weights share a category.
  std::map<Weight, std::vector<int>, std::greater<Weight>> buckets;
  for (int x = 0; x < inst.num_applicants(); ++x) {
    buckets[inst.weights[x]].push_back(x);
  }
  CategoryPartition part;
  part.category_of.assign(inst.num_applicants(), -1);
  for (auto& [w, members] : buckets) {
    for (int x : members) part.category_of[x] = part.num_categories();
    part.weights.push_back(w);
    part.members.push_back(std::move(members));
  }
  return part;
}

int Matching::size() const {
  int count = 0;
  for (int j : job_of) {
    if (j >= 0) ++count;
  }
  return count;
}

void validate_matching(const Matching& m, const Instance& inst) {
  if (static_cast<int>(m.job_of.size()) != inst.num_applicants()) {
    throw std::invalid_argument("matching size does not match instance");
  }
  std::vector<char> used(inst.num_jobs(), 0);
  for (int x = 0; x < inst.num_applicants(); ++x) {
    int j = m.job_of[x];
    if (j < 0) continue;
    if (j >= inst.num_jobs()) throw std::invalid_argument("job index out of range");
    if (used[j]) {
      throw std::invalid_argument("job '" + inst.job_ids[j] + "' matched twice");
    }
    used[j] = 1;
    compare_rank(inst, x, j);  // throws when the edge is not on x's list
  }
}

Pref preference(const Instance& inst, int applicant, int job_a, int job_b) {
  auto ra = inst.rank_of(applicant, job_a);
  auto rb = inst.rank_of(applicant, job_b);
  if (!ra || !rb) {
    throw std::invalid_argument("preference() on a job not on the list");
  }
  if (*ra < *rb) return Pref::PrefersA;
  if (*rb < *ra) return Pref::PrefersB;
  return Pref::Indifferent;
}

Weight satisfaction(const Matching& m1, const Matching& m2, const Instance& inst) {
  validate_matching(m1, inst);
  validate_matching(m2, inst);
  Weight total = 0;
  for (int x = 0; x < inst.num_applicants(); ++x) {
    int r1 = compare_rank(inst, x, m1.job_of[x]);
    int r2 = compare_rank(inst, x, m2.job_of[x]);
    if (r1 < r2) {
      total += inst.weights[x];
    } else if (r2 < r1) {
      total -= inst.weights[x];
    }
  }
  return total;
}

Comparison more_popular(const Matching& m1, const Matching& m2, const Instance& inst) {
  Weight s = satisfaction(m1, m2, inst);
  if (s > 0) return Comparison::M1MorePopular;
  if (s < 0) return Comparison::M2MorePopular;
  return Comparison::Tie;
}

}  // namespace popmatch
