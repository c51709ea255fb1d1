#pragma once

#include <cstdint>
#include <vector>

#include "popmatch/core.hpp"

namespace popmatch::gen {

/// Deterministic random instance generator. Lists are sampled without
/// replacement; each boundary between consecutive sampled jobs becomes a tie
/// with probability tie_prob. Category weights default to 2^(k-1), ..., 2, 1
/// (so w_i = 2 w_{i+1}), overridable with `weights`.
struct Params {
  int applicants = 10;
  int jobs = 10;
  int list_len = 3;
  double tie_prob = 0.0;
  int categories = 1;
  std::uint64_t seed = 1;
  std::vector<Weight> weights;  // optional; size must equal categories
};

Instance generate(const Params& params);

}  // namespace popmatch::gen
