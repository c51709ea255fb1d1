#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "popmatch/core.hpp"

namespace popmatch::strict {

/// Sentinel for "no strictly better labeled job"; compares greater than any
/// weight sum.
constexpr Weight kLambdaInf = std::numeric_limits<Weight>::max();

/// First/second jobs for a strict, augmented instance. f(x) for x in C_1 is
/// x's top job; for lower categories it is the first job on the list not
/// already claimed as an f-job by a higher category. s(x) is the first job
/// that is no category's f-job up to x's own; it is left as -1 when
/// f(x) = l(x), the only case where it is never consulted.
struct FSAssignment {
  std::vector<int> f_job;    // per applicant
  std::vector<int> s_job;    // per applicant; -1 when unconsulted
  std::vector<int> f_level;  // per job; 0 = not an f-job, else 1-based category
};

FSAssignment compute_fs(const Instance& inst, const CategoryPartition& part);

/// Surviving f/s-edges after pruning plus the promotion-cost labels.
struct ReducedGraph {
  std::vector<Weight> lambda;   // per job; kLambdaInf where unlabeled
  std::vector<bool> f_edge_alive;
  std::vector<bool> s_edge_alive;
  std::vector<std::pair<int, int>> pruned_edges;  // (applicant, job)
};

/// min lambda(q) over jobs q that `applicant` strictly prefers to
/// `bound_job`; kLambdaInf when there is no such job.
Weight lambda_min(const Instance& inst, int applicant, int bound_job,
                  const std::vector<Weight>& lambda);

/// The strict pruning procedure. Labels every f_i-job with the minimum
/// promotion-path cost out of it and prunes f-edges of contended jobs whose
/// holder could be displaced too cheaply, then s-edges undercut by a
/// promotion path out of a job between f(x) and s(x). Returns nullopt when
/// no popular matching exists.
std::optional<ReducedGraph> prune(const Instance& inst,
                                  const CategoryPartition& part,
                                  const FSAssignment& fs);

/// Builds a well-formed matching inside the reduced graph: drops s-edges
/// aimed at f-jobs, forces degree-1 applicants, matches the residual
/// degree-2 graph and repairs free f-jobs. Returns nullopt when the reduced
/// graph admits no well-formed matching. Matched last resorts come back
/// normalized to -1.
std::optional<Matching> find_well_formed(const Instance& inst,
                                         const CategoryPartition& part,
                                         const FSAssignment& fs,
                                         const ReducedGraph& reduced);

/// Full pipeline for strict instances. Throws std::invalid_argument when the
/// instance has ties.
std::optional<Matching> solve(const Instance& raw);

}  // namespace popmatch::strict
