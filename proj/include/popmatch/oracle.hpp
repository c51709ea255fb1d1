#pragma once

#include <cstdint>
#include <vector>

#include "popmatch/core.hpp"
#include "popmatch/strict.hpp"
#include "popmatch/ties.hpp"

/// Brute-force popularity oracle. Used by tests and the CLI verify command
/// as ground truth; the solvers never call into it.
namespace popmatch::oracle {

constexpr std::int64_t kDefaultGuard = 10'000'000;

/// (#real jobs + 1)^#applicants, saturating; the enumeration refuses to run
/// when this exceeds the guard.
std::int64_t enumeration_bound(const Instance& inst);

/// Every assignment of applicants to distinct listed jobs or their last
/// resorts, depth-first in applicant/list order. Last resorts come back as
/// explicit job indices on augmented instances and as -1 otherwise.
/// Throws std::length_error when the instance exceeds `limit`.
std::vector<Matching> enumerate_matchings(const Instance& inst,
                                          std::int64_t limit = kDefaultGuard);

struct PopularityResult {
  bool popular = false;
  Matching witness;              // first maximizer in enumeration order
  Weight witness_satisfaction = 0;  // > 0 iff beaten
};

/// Full scan: popular iff no enumerated matching has positive satisfaction
/// over m; otherwise reports a maximizing witness.
PopularityResult is_popular(const Matching& m, const Instance& inst,
                            std::int64_t limit = kDefaultGuard);

/// Verdict only; same predicate as is_popular but allowed to stop at the
/// first beater.
bool popular_verdict(const Matching& m, const Instance& inst,
                     std::int64_t limit = kDefaultGuard);

std::vector<Matching> all_popular(const Instance& inst,
                                  std::int64_t limit = kDefaultGuard);

/// Structural well-formedness, strict flavor: every f-job is matched to an
/// applicant whose f-job it is, and every applicant sits on f(x) or s(x).
bool is_well_formed(const Matching& m, const Instance& inst,
                    const strict::FSAssignment& fs);

/// Ties flavor: applicant-complete within f(x) u s(x) and maximum in every
/// layer graph.
bool is_well_formed(const Matching& m, const Instance& inst,
                    const CategoryPartition& part, const ties::LayeredState& layers);

}  // namespace popmatch::oracle
