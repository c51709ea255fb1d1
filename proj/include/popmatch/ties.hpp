#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "popmatch/core.hpp"
#include "popmatch/graphkit.hpp"
#include "popmatch/strict.hpp"  // kLambdaInf

namespace popmatch::ties {

using strict::kLambdaInf;

/// Layered state for instances with ties. Layer i (0-based here, category
/// C_{i+1} in 1-based terms) adds the f-set edges of its category to the
/// graph; M_i is a maximum matching of G_i obtained by augmenting M_{i-1}.
/// Criticality (matched in every maximum matching) is recorded per layer and
/// per side; it is not monotone across layers.
struct LayeredState {
  // Per applicant.
  std::vector<std::vector<int>> f_set;  // best-rank jobs non-critical in all earlier layers
  std::vector<int> f_rank;              // group index of f_set on x's list
  std::vector<std::vector<int>> s_set;  // empty iff x is critical in its own layer
  std::vector<int> s_rank;              // -1 when s_set is empty

  // Per layer.
  std::vector<graphkit::PairMatching> layer_matching;  // M_i
  std::vector<int> layer_size;                         // |M_i|
  std::vector<std::vector<bool>> app_critical;         // [layer][applicant]
  std::vector<std::vector<bool>> job_critical;         // [layer][job]

  // Per job: first layer where the job is critical, -1 if none. Jobs keep
  // their label from this layer.
  std::vector<int> first_critical_layer;

  // f-edge contenders per job, appended in layer order; the prefix with
  // category <= i is exactly the adjacency of G_i.
  std::vector<std::vector<int>> job_contenders;
};

LayeredState build_layers(const Instance& inst, const CategoryPartition& part);

/// min lambda(q) over jobs q tied at f(x)'s rank but excluded from f(x)
/// (such jobs are critical in an earlier layer, so they carry labels);
/// kLambdaInf when f(x) covers its whole tie group.
Weight lambda_equiv(const Instance& inst, int applicant, const LayeredState& layers,
                    const std::vector<Weight>& lambda);

struct PruneResult {
  std::vector<Weight> lambda;  // per job; kLambdaInf where unlabeled
  std::vector<bool> f_edges_alive;  // per applicant (whole f-set at once)
  std::vector<bool> s_edges_alive;
  std::vector<std::pair<int, int>> pruned_edges;  // (applicant, job)
};

/// The pruning procedure with ties: labels jobs at their first critical
/// layer with the minimum promotion-path cost out of them, prunes f-sets of
/// non-critical applicants that could be displaced too cheaply, then s-sets
/// undercut by a cheaper promotion path. Returns nullopt when no popular
/// matching exists.
std::optional<PruneResult> prune(const Instance& inst,
                                 const CategoryPartition& part,
                                 const LayeredState& layers);

/// Finds a well-formed matching in the pruned graph via the rank-maximal
/// reduction: f-edges of C_i get rank i, s-edges rank k+1 (and, in the
/// max-cardinality variant, s-edges to the last resort get rank k+2). The
/// result is accepted iff it is applicant-complete and maximum in every G_i.
std::optional<Matching> find_well_formed(const Instance& inst,
                                         const CategoryPartition& part,
                                         const LayeredState& layers,
                                         const PruneResult& pruned,
                                         bool max_cardinality = false);

/// Full pipeline; accepts ties and strict instances alike.
std::optional<Matching> solve(const Instance& raw);

/// As solve(), but among all popular matchings returns one assigning the
/// fewest last-resort jobs.
std::optional<Matching> solve_max_cardinality(const Instance& raw);

}  // namespace popmatch::ties
