#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "logfol/errors.hpp"
#include "logfol/foliation.hpp"

namespace logfol::cli {

using Json = nlohmann::ordered_json;

struct SpecIssue {
  std::string location;  // "line 3, column 7" or a field path
  std::string message;
};

// Malformed document (not JSON, or wrong shapes/types). Carries every issue
// found in one pass.
class ParseError : public ValidationError {
 public:
  explicit ParseError(std::vector<SpecIssue> issues);
  const std::vector<SpecIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<SpecIssue> issues_;
};

struct ParsedSpec {
  FoliationSpec spec;
  std::vector<std::string> warnings;
};

// Parses and validates a spec document. `force_strict` ORs with
// options.strict; in strict mode a violated residue sum or n < 2 is a
// ValidationError, otherwise a warning.
ParsedSpec parse_spec(std::string_view text, bool force_strict = false);

// Reads from `path`, or from standard input when path is "-".
ParsedSpec parse_spec_file(const std::string& path, bool force_strict = false);

// Canonical document for `spec`; parse_spec(serialize_spec(s).dump()) == s.
Json serialize_spec(const FoliationSpec& spec);

}  // namespace logfol::cli
