#include "popmatch/io.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace popmatch::io {

namespace {

constexpr Weight kMaxWeight = 1'000'000'000'000;  // keeps satisfaction sums exact

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : line) {
    if (c == '#') break;
    if (c == '(' || c == ')') {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      tokens.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool valid_id(const std::string& token) {
  if (token.empty() || token == "-" || token == ":") return false;
  for (char c : token) {
    if (c == '(' || c == ')' || c == '#' || c == ':') return false;
  }
  return true;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance inst;
  std::unordered_map<std::string, int> job_index;
  std::unordered_map<std::string, int> applicant_index;

  auto job_of = [&](const std::string& id) {
    auto [it, inserted] = job_index.emplace(id, inst.num_jobs());
    if (inserted) inst.job_ids.push_back(id);
    return it->second;
  };

  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<char> listed;  // per-applicant scratch, cleared via listed_here
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!header_seen) {
      if (tokens.size() != 2 || tokens[0] != "popmatch" || tokens[1] != "v1") {
        throw ParseError(line_no, "expected header 'popmatch v1'");
      }
      header_seen = true;
      continue;
    }

    // <applicant-id> <weight> : <group> ...
    if (tokens.size() < 3 || tokens[2] != ":") {
      throw ParseError(line_no, "expected '<applicant> <weight> : <groups>'");
    }
    if (!valid_id(tokens[0])) throw ParseError(line_no, "bad applicant id");
    if (applicant_index.count(tokens[0])) {
      throw ParseError(line_no, "duplicate applicant '" + tokens[0] + "'");
    }
    Weight weight = 0;
    try {
      size_t used = 0;
      weight = std::stoll(tokens[1], &used);
      if (used != tokens[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad weight '" + tokens[1] + "'");
    }
    if (weight < 1) throw ParseError(line_no, "weight must be >= 1");
    if (weight > kMaxWeight) throw ParseError(line_no, "weight too large");

    applicant_index.emplace(tokens[0], inst.num_applicants());
    inst.applicant_ids.push_back(tokens[0]);
    inst.weights.push_back(weight);
    inst.prefs.emplace_back();
    auto& groups = inst.prefs.back();

    std::vector<int> listed_here;
    auto add_job = [&](const std::string& id, std::vector<int>& group) {
      if (!valid_id(id)) throw ParseError(line_no, "bad job id '" + id + "'");
      int j = job_of(id);
      if (j >= static_cast<int>(listed.size())) listed.resize(j + 1, 0);
      if (listed[j]) throw ParseError(line_no, "job '" + id + "' listed twice");
      listed[j] = 1;
      listed_here.push_back(j);
      group.push_back(j);
    };

    size_t t = 3;
    while (t < tokens.size()) {
      if (tokens[t] == "(") {
        std::vector<int> group;
        ++t;
        while (t < tokens.size() && tokens[t] != ")") add_job(tokens[t++], group);
        if (t == tokens.size()) throw ParseError(line_no, "unterminated tie group");
        ++t;  // consume ')'
        if (group.empty()) throw ParseError(line_no, "empty tie group");
        groups.push_back(std::move(group));
      } else if (tokens[t] == ")") {
        throw ParseError(line_no, "unmatched ')'");
      } else {
        std::vector<int> group;
        add_job(tokens[t++], group);
        groups.push_back(std::move(group));
      }
    }
    for (int j : listed_here) listed[j] = 0;
  }
  if (!header_seen) throw ParseError(line_no, "missing 'popmatch v1' header");
  inst.num_real_jobs = inst.num_jobs();
  validate(inst);
  return inst;
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string render_instance(const Instance& inst) {
  std::ostringstream out;
  out << "popmatch v1\n";
  for (int x = 0; x < inst.num_applicants(); ++x) {
    out << inst.applicant_ids[x] << ' ' << inst.weights[x] << " :";
    for (const auto& group : inst.prefs[x]) {
      if (group.size() == 1 && !inst.is_last_resort(group[0])) {
        out << ' ' << inst.job_ids[group[0]];
      } else if (group.size() > 1) {
        out << " (";
        for (int j : group) out << ' ' << inst.job_ids[j];
        out << " )";
      }
      // augmented last-resort groups are an internal detail; never printed
    }
    out << '\n';
  }
  return out.str();
}

std::string render_matching(const Matching& m, const Instance& inst) {
  std::vector<int> order(inst.num_applicants());
  for (int x = 0; x < inst.num_applicants(); ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.applicant_ids[a] < inst.applicant_ids[b];
  });
  std::ostringstream out;
  for (int x : order) {
    int j = m.job_of[x];
    bool real = j >= 0 && !inst.is_last_resort(j);
    out << inst.applicant_ids[x] << ' ' << (real ? inst.job_ids[j] : "-") << '\n';
  }
  return out.str();
}

Matching parse_matching(std::istream& in, const Instance& inst) {
  std::unordered_map<std::string, int> applicant_index, job_index;
  for (int x = 0; x < inst.num_applicants(); ++x) {
    applicant_index.emplace(inst.applicant_ids[x], x);
  }
  for (int j = 0; j < inst.num_real_jobs; ++j) {
    job_index.emplace(inst.job_ids[j], j);
  }

  Matching m(inst.num_applicants());
  std::vector<char> assigned(inst.num_applicants(), 0);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() == 1 && (tokens[0] == "POPULAR" || tokens[0] == "NONE")) {
      continue;  // verdict line from solve output
    }
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected '<applicant-id> <job-id|->'");
    }
    auto it = applicant_index.find(tokens[0]);
    if (it == applicant_index.end()) {
      throw ParseError(line_no, "unknown applicant '" + tokens[0] + "'");
    }
    if (assigned[it->second]) {
      throw ParseError(line_no, "applicant '" + tokens[0] + "' assigned twice");
    }
    assigned[it->second] = 1;
    if (tokens[1] == "-") continue;  // stays on the last resort
    auto jt = job_index.find(tokens[1]);
    if (jt == job_index.end()) {
      throw ParseError(line_no, "unknown job '" + tokens[1] + "'");
    }
    m.job_of[it->second] = jt->second;
  }
  try {
    validate_matching(m, inst);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
  return m;
}

Matching parse_matching_string(const std::string& text, const Instance& inst) {
  std::istringstream in(text);
  return parse_matching(in, inst);
}

}  // namespace popmatch::io
