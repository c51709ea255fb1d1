#include "popmatch/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace popmatch::gen {

namespace {

// Local helpers over mt19937_64 so generated instances do not depend on
// standard-library distribution internals.
int next_int(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Instance generate(const Params& params) {
  if (params.applicants < 1 || params.jobs < 1 || params.categories < 1) {
    throw std::invalid_argument("generator needs positive sizes");
  }
  if (!params.weights.empty() &&
      static_cast<int>(params.weights.size()) != params.categories) {
    throw std::invalid_argument("weights must match the category count");
  }

  std::vector<Weight> weights = params.weights;
  if (weights.empty()) {
    for (int c = 0; c < params.categories; ++c) {
      weights.push_back(Weight{1} << (params.categories - 1 - c));
    }
  }
  for (Weight w : weights) {
    if (w < 1) throw std::invalid_argument("weights must be positive");
  }

  std::mt19937_64 rng(params.seed);
  Instance inst;
  inst.num_real_jobs = params.jobs;
  for (int j = 0; j < params.jobs; ++j) {
    inst.job_ids.push_back("j" + std::to_string(j + 1));
  }

  std::vector<int> pool(params.jobs);
  for (int j = 0; j < params.jobs; ++j) pool[j] = j;
  const int len = std::min(params.list_len, params.jobs);
  std::vector<int> picks(len);
  for (int x = 0; x < params.applicants; ++x) {
    inst.applicant_ids.push_back("x" + std::to_string(x + 1));
    inst.weights.push_back(weights[next_int(rng, params.categories)]);

    // Partial Fisher-Yates draw of `len` distinct jobs; swaps are undone
    // afterwards so each applicant costs O(len), not O(jobs).
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < len; ++i) {
      picks[i] = i + next_int(rng, params.jobs - i);
      std::swap(pool[i], pool[picks[i]]);
      if (i == 0 || next_unit(rng) >= params.tie_prob) {
        groups.push_back({pool[i]});
      } else {
        groups.back().push_back(pool[i]);
      }
    }
    for (int i = len - 1; i >= 0; --i) std::swap(pool[i], pool[picks[i]]);
    inst.prefs.push_back(std::move(groups));
  }
  validate(inst);
  return inst;
}

}  // namespace popmatch::gen
