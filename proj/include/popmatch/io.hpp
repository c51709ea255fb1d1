#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "popmatch/core.hpp"

namespace popmatch::io {

/// Parse failure with the 1-based line it occurred on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Instance file format (line oriented, '#' starts a comment):
///
///   popmatch v1
///   <applicant-id> <weight> : <group> <group> ...
///
/// where a group is a bare job id (singleton) or `( id id ... )` (tie
/// group); group order is rank order. Job ids are declared implicitly by
/// use. Last-resort jobs never appear in files.
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);

std::string render_instance(const Instance& inst);

/// Matching text: optional verdict line (POPULAR), then one line per
/// applicant `<applicant-id> <job-id>` with `-` for the last resort, sorted
/// by applicant id.
std::string render_matching(const Matching& m, const Instance& inst);

/// Parses a matching against `inst`; applicants missing from the file stay
/// on their last resort.
Matching parse_matching(std::istream& in, const Instance& inst);
Matching parse_matching_string(const std::string& text, const Instance& inst);

}  // namespace popmatch::io
