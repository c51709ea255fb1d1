#include <doctest.h>

#include <algorithm>
#include <random>

#include "popmatch/oracle.hpp"
#include "popmatch/strict.hpp"
#include "popmatch/ties.hpp"
#include "test_support.hpp"

using namespace popmatch;
using test_support::applicant;
using test_support::example_instance;
using test_support::job;
using test_support::make_matching;

namespace {

struct TiesPipeline {
  Instance inst;
  CategoryPartition part;
  ties::LayeredState layers;

  explicit TiesPipeline(const Instance& raw)
      : inst(augment_with_last_resorts(raw)),
        part(categorize(inst)),
        layers(ties::build_layers(inst, part)) {}
};

int count_last_resorts(const Matching& m) {
  int count = 0;
  for (int j : m.job_of) count += j < 0;
  return count;
}

}  // namespace

TEST_CASE("layers on the strict example reproduce the strict f-jobs") {
  TiesPipeline p(example_instance());
  const auto& inst = p.inst;
  CHECK(p.layers.f_set[applicant(inst, "x1")] == std::vector<int>{job(inst, "A")});
  CHECK(p.layers.f_set[applicant(inst, "x2")] == std::vector<int>{job(inst, "C")});
  CHECK(p.layers.f_set[applicant(inst, "x3")] == std::vector<int>{job(inst, "D")});
  CHECK(p.layers.f_set[applicant(inst, "x4")] == std::vector<int>{job(inst, "D")});
  // x1 and x2 are critical in their own layers, so their s-sets are empty;
  // x3 and x4 fall through to E.
  CHECK(p.layers.s_set[applicant(inst, "x1")].empty());
  CHECK(p.layers.s_set[applicant(inst, "x2")].empty());
  CHECK(p.layers.s_set[applicant(inst, "x3")] == std::vector<int>{job(inst, "E")});
  CHECK(p.layers.s_set[applicant(inst, "x4")] == std::vector<int>{job(inst, "E")});
  CHECK(p.layers.layer_size == std::vector<int>{1, 2, 3});
}

TEST_CASE("a tie group can be claimed whole by a heavy applicant") {
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "x1 5 : ( A B )\n"
      "x2 3 : A B\n");
  TiesPipeline p(inst);
  int x1 = applicant(p.inst, "x1"), x2 = applicant(p.inst, "x2");
  CHECK(p.layers.f_set[x1] ==
        std::vector<int>{job(p.inst, "A"), job(p.inst, "B")});
  CHECK(p.layers.s_set[x1].empty());  // critical in G_1
  // Neither A nor B is critical in G_1, so x2 keeps its top choice.
  CHECK(p.layers.f_set[x2] == std::vector<int>{job(p.inst, "A")});
}

TEST_CASE("equal applicants sharing one tied job fall back to last resorts") {
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "x1 2 : A\n"
      "x2 2 : A\n");
  TiesPipeline p(inst);
  CHECK(p.layers.f_set[0] == std::vector<int>{job(p.inst, "A")});
  CHECK(p.layers.f_set[1] == std::vector<int>{job(p.inst, "A")});
  CHECK(p.layers.s_set[0] == std::vector<int>{p.inst.last_resort_of(0)});
  CHECK(p.layers.s_set[1] == std::vector<int>{p.inst.last_resort_of(1)});
}

TEST_CASE("lambda_equiv") {
  // Strict lists never have equal-rank jobs outside f(x).
  TiesPipeline strict_p(example_instance());
  std::vector<Weight> lambda(strict_p.inst.num_jobs(), ties::kLambdaInf);
  for (int x = 0; x < strict_p.inst.num_applicants(); ++x) {
    CHECK(ties::lambda_equiv(strict_p.inst, x, strict_p.layers, lambda) ==
          ties::kLambdaInf);
  }

  // y claims A in layer 1; x's rank-1 group (A B) shrinks to f(x) = {B} and
  // the excluded A carries its label into lambda_equiv.
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "y 4 : A\n"
      "x 2 : ( A B ) C\n");
  TiesPipeline p(inst);
  int x = applicant(p.inst, "x");
  REQUIRE(p.layers.f_set[x] == std::vector<int>{job(p.inst, "B")});
  std::vector<Weight> lam(p.inst.num_jobs(), ties::kLambdaInf);
  lam[job(p.inst, "A")] = 4;
  CHECK(ties::lambda_equiv(p.inst, x, p.layers, lam) == 4);

  // f(x) covering the whole group leaves nothing to compare against.
  Instance whole = io::parse_instance_string("popmatch v1\nx 2 : ( A B )\n");
  TiesPipeline q(whole);
  std::vector<Weight> lam2(q.inst.num_jobs(), ties::kLambdaInf);
  CHECK(ties::lambda_equiv(q.inst, 0, q.layers, lam2) == ties::kLambdaInf);
}

TEST_CASE("prune-ties on the strict example matches prune-strict") {
  TiesPipeline p(example_instance());
  const auto& inst = p.inst;
  auto pruned = ties::prune(inst, p.part, p.layers);
  REQUIRE(pruned.has_value());
  CHECK(pruned->lambda[job(inst, "A")] == 7);
  CHECK(pruned->lambda[job(inst, "C")] == 3);
  CHECK(pruned->lambda[job(inst, "D")] == 2);
  REQUIRE(pruned->pruned_edges.size() == 1);
  CHECK(pruned->pruned_edges[0] ==
        std::make_pair(applicant(inst, "x3"), job(inst, "D")));
}

TEST_CASE("single category: critical jobs labeled w1, nothing pruned") {
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "a 3 : ( A B )\n"
      "b 3 : A C\n");
  TiesPipeline p(inst);
  auto pruned = ties::prune(p.inst, p.part, p.layers);
  REQUIRE(pruned.has_value());
  CHECK(pruned->pruned_edges.empty());
  for (int j = 0; j < p.inst.num_jobs(); ++j) {
    if (p.layers.job_critical[0][j]) {
      CHECK(pruned->lambda[j] == 3);
    } else {
      CHECK(pruned->lambda[j] == ties::kLambdaInf);
    }
  }
}

TEST_CASE("find_well_formed reproduces the worked example") {
  TiesPipeline p(example_instance());
  auto pruned = ties::prune(p.inst, p.part, p.layers);
  REQUIRE(pruned.has_value());
  auto m = ties::find_well_formed(p.inst, p.part, p.layers, *pruned);
  REQUIRE(m.has_value());
  CHECK(*m == make_matching(p.inst,
                            {{"x1", "A"}, {"x2", "C"}, {"x3", "E"}, {"x4", "D"}}));
}

TEST_CASE("two equal applicants over one tie group pair up perfectly") {
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "a 1 : ( A B )\n"
      "b 1 : ( A B )\n");
  auto m = ties::solve(inst);
  REQUIRE(m.has_value());
  CHECK(m->job_of[0] >= 0);
  CHECK(m->job_of[1] >= 0);
  CHECK(oracle::is_popular(*m, augment_with_last_resorts(inst)).popular);
}

TEST_CASE("three equal applicants over one tie group: popular with one last resort") {
  // Unlike the strict A,B case, ranks tie here, so bumping the middle
  // applicant costs nothing and a popular matching survives.
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "a 1 : ( A B )\n"
      "b 1 : ( A B )\n"
      "c 1 : ( A B )\n");
  auto m = ties::solve(inst);
  REQUIRE(m.has_value());
  CHECK(count_last_resorts(*m) == 1);
  CHECK(oracle::is_popular(*m, augment_with_last_resorts(inst)).popular);
  CHECK_FALSE(oracle::all_popular(augment_with_last_resorts(inst)).empty());
}

TEST_CASE("solve agrees with solve_strict on strict instances") {
  auto strict_m = strict::solve(example_instance());
  auto ties_m = ties::solve(example_instance());
  REQUIRE(strict_m.has_value());
  REQUIRE(ties_m.has_value());
  CHECK(*strict_m == *ties_m);

  std::mt19937_64 rng(512);
  for (int round = 0; round < 200; ++round) {
    Instance inst = test_support::random_instance(rng, 6, 6, 3, 0.0);
    auto a = strict::solve(inst);
    auto b = ties::solve(inst);
    CHECK(a.has_value() == b.has_value());
    if (a && b) {
      Instance aug = augment_with_last_resorts(inst);
      CHECK(oracle::popular_verdict(*a, aug));
      CHECK(oracle::popular_verdict(*b, aug));
    }
  }
}

TEST_CASE("k=1 with all edges rank 1 reduces to applicant-complete matching") {
  std::mt19937_64 rng(513);
  for (int round = 0; round < 100; ++round) {
    popmatch::gen::Params params;
    params.applicants = 1 + static_cast<int>(rng() % 5);
    params.jobs = 1 + static_cast<int>(rng() % 5);
    params.list_len = params.jobs;
    params.tie_prob = 1.0;  // single tie group per applicant
    params.categories = 1;
    params.seed = rng();
    Instance inst = popmatch::gen::generate(params);
    auto m = ties::solve(inst);
    // Every applicant lists every job at rank 1; a popular matching exists
    // iff the f-sets plus last resorts admit an applicant-complete matching,
    // which here is always true.
    REQUIRE(m.has_value());
    CHECK(oracle::popular_verdict(*m, augment_with_last_resorts(inst)));
  }
}

TEST_CASE("f and s sets are disjoint on random ties instances") {
  std::mt19937_64 rng(514);
  for (int round = 0; round < 200; ++round) {
    TiesPipeline p(test_support::random_instance(rng, 6, 5, 3, 0.5));
    for (int x = 0; x < p.inst.num_applicants(); ++x) {
      CHECK_FALSE(p.layers.f_set[x].empty());
      for (int j : p.layers.s_set[x]) {
        CHECK(std::find(p.layers.f_set[x].begin(), p.layers.f_set[x].end(), j) ==
              p.layers.f_set[x].end());
      }
    }
    // Layer matchings never shrink.
    for (size_t i = 1; i < p.layers.layer_size.size(); ++i) {
      CHECK(p.layers.layer_size[i] >= p.layers.layer_size[i - 1]);
    }
  }
}

TEST_CASE("solver verdict agrees with the oracle on random ties instances") {
  std::mt19937_64 rng(515);
  for (int round = 0; round < 250; ++round) {
    Instance inst = test_support::random_instance(rng, 5, 5, 3, round % 2 ? 0.7 : 0.3);
    Instance aug = augment_with_last_resorts(inst);
    auto m = ties::solve(inst);
    if (m) {
      CHECK(oracle::popular_verdict(*m, aug));
    } else {
      CHECK(oracle::all_popular(aug).empty());
    }
  }
}

TEST_CASE("max-cardinality minimizes last-resort assignments") {
  Instance two = io::parse_instance_string(
      "popmatch v1\n"
      "a 1 : A\n"
      "b 1 : A\n");
  auto m = ties::solve_max_cardinality(two);
  REQUIRE(m.has_value());
  CHECK(count_last_resorts(*m) == 1);

  // An applicant whose whole list is claimed above keeps its last resort.
  Instance forced = io::parse_instance_string(
      "popmatch v1\n"
      "a 4 : A\n"
      "b 2 : A\n");
  auto fm = ties::solve_max_cardinality(forced);
  REQUIRE(fm.has_value());
  CHECK(fm->job_of[applicant(forced, "a")] == job(forced, "A"));
  CHECK(fm->job_of[applicant(forced, "b")] == -1);

  auto ex = ties::solve_max_cardinality(example_instance());
  REQUIRE(ex.has_value());
  Instance e = example_instance();
  CHECK(*ex == make_matching(e, {{"x1", "A"}, {"x2", "C"}, {"x3", "E"}, {"x4", "D"}}));
}

TEST_CASE("max-cardinality matches the oracle's minimum on random instances") {
  std::mt19937_64 rng(516);
  int with_popular = 0;
  for (int round = 0; round < 400 && with_popular < 120; ++round) {
    Instance inst = test_support::random_instance(rng, 5, 4, 3, 0.4);
    auto m = ties::solve_max_cardinality(inst);
    Instance aug = augment_with_last_resorts(inst);
    if (!m) {
      CHECK(oracle::all_popular(aug).empty());
      continue;
    }
    ++with_popular;
    CHECK(oracle::popular_verdict(*m, aug));
    auto popular = oracle::all_popular(aug);
    REQUIRE_FALSE(popular.empty());
    int best = inst.num_applicants();
    for (const auto& pm : popular) {
      int lr = 0;
      for (int x = 0; x < aug.num_applicants(); ++x) {
        int j = pm.job_of[x];
        lr += (j < 0 || aug.is_last_resort(j));
      }
      best = std::min(best, lr);
    }
    CHECK(count_last_resorts(*m) == best);
  }
  CHECK(with_popular >= 120);
}
