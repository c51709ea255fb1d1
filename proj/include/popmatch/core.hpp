#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace popmatch {

using Weight = std::int64_t;

/// A one-sided preference instance: applicants with positive integer weights
/// rank a subset of the jobs in tie groups (group index = rank, best group
/// first). An instance is strict when every group is a singleton.
///
/// Job indices < num_real_jobs are the jobs declared by the input; indices
/// >= num_real_jobs are per-applicant last-resort jobs appended by
/// augment_with_last_resorts(). Last-resort jobs appear on exactly one list,
/// as the final singleton group of their applicant.
struct Instance {
  std::vector<std::string> applicant_ids;
  std::vector<std::string> job_ids;
  std::vector<Weight> weights;
  /// prefs[x] = ordered tie groups of job indices for applicant x.
  std::vector<std::vector<std::vector<int>>> prefs;
  int num_real_jobs = 0;
  bool augmented = false;

  int num_applicants() const { return static_cast<int>(weights.size()); }
  int num_jobs() const { return static_cast<int>(job_ids.size()); }

  bool is_strict() const;
  bool is_last_resort(int job) const { return job >= num_real_jobs; }
  int last_resort_of(int applicant) const;

  /// Tie-group index of `job` on x's list (0 = best), or nullopt if unlisted.
  std::optional<int> rank_of(int applicant, int job) const;
};

/// Checks structural invariants: positive weights, jobs in range, no job
/// listed twice by one applicant, non-empty groups, and (when augmented)
/// exactly one trailing last-resort group per applicant.
/// Throws std::invalid_argument on violation.
void validate(const Instance& inst);

/// Appends a fresh singleton last-resort job to every applicant's list.
/// Idempotent: an already-augmented instance is returned unchanged.
Instance augment_with_last_resorts(const Instance& inst);

/// Applicants grouped by distinct weight, C_1..C_k with w_1 > ... > w_k.
struct CategoryPartition {
  std::vector<Weight> weights;            // per category, strictly decreasing
  std::vector<std::vector<int>> members;  // per category, applicant indices
  std::vector<int> category_of;           // applicant -> category index

  int num_categories() const { return static_cast<int>(weights.size()); }
};

CategoryPartition categorize(const Instance& inst);

/// A (partial) assignment of applicants to jobs. job_of[x] == -1 means x is
/// unmatched, which every comparison treats as "holds the last-resort job".
struct Matching {
  std::vector<int> job_of;

  Matching() = default;
  explicit Matching(int num_applicants) : job_of(num_applicants, -1) {}

  int size() const;  // number of matched applicants
  bool operator==(const Matching& other) const = default;
};

/// Throws std::invalid_argument when a matched edge is not on the applicant's
/// list or a job is used twice.
void validate_matching(const Matching& m, const Instance& inst);

enum class Pref { PrefersA, PrefersB, Indifferent };

/// Compares two listed jobs by tie-group index for one applicant.
/// Throws std::invalid_argument if either job is not on x's list.
Pref preference(const Instance& inst, int applicant, int job_a, int job_b);

/// Total weight of applicants preferring m1 minus total weight preferring m2.
/// Unmatched applicants count as holding their last-resort job.
Weight satisfaction(const Matching& m1, const Matching& m2, const Instance& inst);

enum class Comparison { M1MorePopular, M2MorePopular, Tie };

Comparison more_popular(const Matching& m1, const Matching& m2, const Instance& inst);

}  // namespace popmatch
