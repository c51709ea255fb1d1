#include <doctest.h>

#include <random>

#include "popmatch/generator.hpp"
#include "popmatch/io.hpp"
#include "test_support.hpp"

using namespace popmatch;
using test_support::applicant;
using test_support::job;

TEST_CASE("parsing the documented encoding") {
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "# weights and preference lists\n"
      "x1 7 : A B C\n"
      "x2 4 : A C D\n"
      "x3 2 : C A D E\n"
      "x4 2 : A D E\n");
  CHECK(inst.num_applicants() == 4);
  CHECK(inst.num_real_jobs == 5);
  CHECK(inst.is_strict());
  CHECK(inst.weights[applicant(inst, "x3")] == 2);
  CHECK(inst.rank_of(applicant(inst, "x3"), job(inst, "C")) == 0);
  CHECK(inst.rank_of(applicant(inst, "x3"), job(inst, "E")) == 3);
  CHECK_FALSE(inst.rank_of(applicant(inst, "x1"), job(inst, "E")).has_value());
}

TEST_CASE("tie groups") {
  Instance inst = io::parse_instance_string("popmatch v1\nx 1 : ( A B )\n");
  REQUIRE(inst.prefs[0].size() == 1);
  CHECK(inst.prefs[0][0].size() == 2);
  CHECK_FALSE(inst.is_strict());

  Instance mixed = io::parse_instance_string("popmatch v1\nx 1 : C ( A B ) D\n");
  CHECK(mixed.prefs[0].size() == 3);
  CHECK(mixed.rank_of(0, job(mixed, "A")) == 1);
  CHECK(mixed.rank_of(0, job(mixed, "D")) == 2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(io::parse_instance_string("popmatch v1\nx 0 : A\n"),
                       doctest::Contains("line 2"), io::ParseError);
  CHECK_THROWS_AS(io::parse_instance_string("popmatch v1\nx 1 : A A\n"),
                  io::ParseError);
  CHECK_THROWS_AS(io::parse_instance_string("popmatch v1\nx 1 : ( A\n"),
                  io::ParseError);
  CHECK_THROWS_AS(io::parse_instance_string("popmatch v1\nx notanumber : A\n"),
                  io::ParseError);
  CHECK_THROWS_AS(io::parse_instance_string("x 1 : A\n"), io::ParseError);
  CHECK_THROWS_AS(io::parse_instance_string("popmatch v1\nx 1 A B\n"),
                  io::ParseError);
  CHECK_THROWS_AS(io::parse_instance_string("popmatch v1\nx 1 : A\nx 1 : B\n"),
                  io::ParseError);
}

TEST_CASE("instances round-trip through render and parse") {
  std::mt19937_64 rng(712);
  for (int round = 0; round < 60; ++round) {
    gen::Params params;
    params.applicants = 1 + static_cast<int>(rng() % 8);
    params.jobs = 1 + static_cast<int>(rng() % 8);
    params.list_len = 1 + static_cast<int>(rng() % params.jobs);
    params.tie_prob = (round % 3) * 0.35;
    params.categories = 1 + static_cast<int>(rng() % 3);
    params.seed = rng();
    Instance inst = gen::generate(params);
    Instance back = io::parse_instance_string(io::render_instance(inst));
    CHECK(back.applicant_ids == inst.applicant_ids);
    CHECK(back.weights == inst.weights);
    // Job ids may be discovered in a different order; compare by name.
    REQUIRE(back.num_applicants() == inst.num_applicants());
    for (int x = 0; x < inst.num_applicants(); ++x) {
      REQUIRE(back.prefs[x].size() == inst.prefs[x].size());
      for (size_t g = 0; g < inst.prefs[x].size(); ++g) {
        REQUIRE(back.prefs[x][g].size() == inst.prefs[x][g].size());
        for (size_t t = 0; t < inst.prefs[x][g].size(); ++t) {
          CHECK(back.job_ids[back.prefs[x][g][t]] ==
                inst.job_ids[inst.prefs[x][g][t]]);
        }
      }
    }
  }
}

TEST_CASE("rendering skips last resorts and sorts matchings by applicant id") {
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "b 1 : A\n"
      "a 1 : A\n");
  Instance aug = augment_with_last_resorts(inst);
  CHECK(io::render_instance(aug) == io::render_instance(inst));

  Matching m(2);
  m.job_of[0] = job(inst, "A");  // applicant b
  CHECK(io::render_matching(m, inst) == "a -\nb A\n");
}

TEST_CASE("matching files parse against an instance") {
  Instance inst = io::parse_instance_string(
      "popmatch v1\n"
      "a 1 : A B\n"
      "b 1 : B\n");
  Matching m = io::parse_matching_string("POPULAR\na B\nb -\n", inst);
  CHECK(m.job_of[applicant(inst, "a")] == job(inst, "B"));
  CHECK(m.job_of[applicant(inst, "b")] == -1);

  CHECK_THROWS_AS(io::parse_matching_string("a C\n", inst), io::ParseError);
  CHECK_THROWS_AS(io::parse_matching_string("z A\n", inst), io::ParseError);
  CHECK_THROWS_AS(io::parse_matching_string("a B\nb B\n", inst), io::ParseError);
  CHECK_THROWS_AS(io::parse_matching_string("b A\n", inst), io::ParseError);
}

TEST_CASE("generator is deterministic and honors its knobs") {
  gen::Params params;
  params.applicants = 12;
  params.jobs = 9;
  params.list_len = 4;
  params.tie_prob = 0.5;
  params.categories = 3;
  params.seed = 99;
  Instance a = gen::generate(params);
  Instance b = gen::generate(params);
  CHECK(a.prefs == b.prefs);
  CHECK(a.weights == b.weights);

  params.tie_prob = 0.0;
  CHECK(gen::generate(params).is_strict());

  // Default weights double per category: 4 > 2 > 1.
  Instance c = gen::generate(params);
  for (Weight w : c.weights) {
    CHECK((w == 1 || w == 2 || w == 4));
  }
  for (const auto& groups : c.prefs) {
    size_t total = 0;
    for (const auto& g : groups) total += g.size();
    CHECK(total == 4);
  }
}
