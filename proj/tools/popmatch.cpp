#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "popmatch/core.hpp"
#include "popmatch/generator.hpp"
#include "popmatch/io.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/strict.hpp"
#include "popmatch/ties.hpp"

namespace {

using namespace popmatch;

constexpr int kExitPopular = 0;
constexpr int kExitError = 1;
constexpr int kExitNone = 2;

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return io::parse_instance(in);
}

int run_solve(const std::string& path, const std::string& engine, bool max_cardinality) {
  Instance inst = load_instance(path);
  if (engine == "strict" && !inst.is_strict()) {
    throw std::runtime_error("--engine strict on an instance with ties");
  }
  std::optional<Matching> result;
  if (max_cardinality) {
    result = ties::solve_max_cardinality(inst);
  } else if (engine == "strict" || (engine == "auto" && inst.is_strict())) {
    result = strict::solve(inst);
  } else {
    result = ties::solve(inst);
  }
  if (!result) {
    std::cout << "NONE\n";
    return kExitNone;
  }
  std::cout << "POPULAR\n" << io::render_matching(*result, inst);
  return kExitPopular;
}

int run_verify(const std::string& instance_path, const std::string& matching_path) {
  Instance inst = load_instance(instance_path);
  std::ifstream in(matching_path);
  if (!in) throw std::runtime_error("cannot open '" + matching_path + "'");
  Matching m = io::parse_matching(in, inst);
  auto result = oracle::is_popular(m, inst);
  if (result.popular) {
    std::cout << "POPULAR\n";
    return kExitPopular;
  }
  std::cout << "BEATEN\n"
            << "satisfaction " << result.witness_satisfaction << "\n"
            << io::render_matching(result.witness, inst);
  return kExitNone;
}

int run_gen(const gen::Params& params) {
  std::cout << io::render_instance(gen::generate(params));
  return kExitPopular;
}

int run_bench(const std::vector<int>& sizes, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  std::cout << "n,m,engine,millis\n";
  for (int n : sizes) {
    gen::Params params;
    params.applicants = n;
    params.jobs = n;
    params.list_len = 5;
    params.categories = 3;
    params.seed = seed;

    params.tie_prob = 0.0;
    Instance strict_inst = gen::generate(params);
    auto t0 = Clock::now();
    auto r1 = strict::solve(strict_inst);
    auto t1 = Clock::now();
    (void)r1;
    std::cout << n << ',' << n * params.list_len << ",strict,"
              << std::chrono::duration<double, std::milli>(t1 - t0).count() << '\n';

    params.tie_prob = 0.3;
    Instance ties_inst = gen::generate(params);
    auto t2 = Clock::now();
    auto r2 = ties::solve(ties_inst);
    auto t3 = Clock::now();
    (void)r2;
    std::cout << n << ',' << n * params.list_len << ",ties,"
              << std::chrono::duration<double, std::milli>(t3 - t2).count() << '\n';
  }
  return kExitPopular;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted popular matchings for one-sided preference lists"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "find a popular matching or report NONE");
  std::string solve_file;
  std::string engine = "auto";
  bool max_cardinality = false;
  solve_cmd->add_option("file", solve_file, "instance file")->required();
  solve_cmd->add_flag("--max-cardinality", max_cardinality,
                      "minimize last-resort assignments");
  solve_cmd->add_option("--engine", engine, "strict|ties|auto")
      ->check(CLI::IsMember({"strict", "ties", "auto"}));

  auto* verify_cmd = app.add_subcommand("verify", "check a matching against the brute-force oracle");
  std::string verify_instance, verify_matching;
  verify_cmd->add_option("file", verify_instance, "instance file")->required();
  verify_cmd->add_option("matching-file", verify_matching, "matching file")->required();

  auto* gen_cmd = app.add_subcommand("gen", "emit a random instance");
  gen::Params params;
  std::vector<Weight> weight_override;
  gen_cmd->add_option("--applicants", params.applicants)->required();
  gen_cmd->add_option("--jobs", params.jobs)->required();
  gen_cmd->add_option("--list-len", params.list_len)->required();
  gen_cmd->add_option("--tie-prob", params.tie_prob);
  gen_cmd->add_option("--categories", params.categories);
  gen_cmd->add_option("--seed", params.seed);
  gen_cmd->add_option("--weights", weight_override, "per-category weights")
      ->delimiter(',');

  auto* bench_cmd = app.add_subcommand("bench", "time both engines, CSV output");
  std::vector<int> sizes;
  std::uint64_t bench_seed = 1;
  bench_cmd->add_option("--sizes", sizes, "instance sizes")->delimiter(',')->required();
  bench_cmd->add_option("--seed", bench_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(solve_cmd)) {
      return run_solve(solve_file, engine, max_cardinality);
    }
    if (app.got_subcommand(verify_cmd)) {
      return run_verify(verify_instance, verify_matching);
    }
    if (app.got_subcommand(gen_cmd)) {
      params.weights = weight_override;
      return run_gen(params);
    }
    if (app.got_subcommand(bench_cmd)) {
      return run_bench(sizes, bench_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
