#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "logfol/period.hpp"
#include "spec_document.hpp"

namespace logfol::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitComputation = 2,
  kExitOracle = 3,
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"complement-pi", "leaf-pi",        "resonance",
                                                 "connectivity",  "hyperplane-section",
                                                 "verify-periods", "full"};
  return names;
}

struct RunOptions {
  bool strict = false;
  std::uint64_t seed = 0;
  std::size_t samples = kDefaultSamples;
  double tolerance = kDefaultTolerance;
  // Empty means the default (1e6).
  std::string height_bound;
};

struct RunResult {
  Json report;
  int exit_code = kExitOk;
};

// Exit code for an exception escaping a command: 1 for ValidationError
// (including ParseError), 2 for ComputationError, 3 for OracleError.
int exit_code_for(const std::exception& error);
// Class name reported in the "error.kind" field.
std::string error_kind(const std::exception& error);

// Runs `command` on an already parsed spec.
RunResult run(const std::string& command, const ParsedSpec& parsed, const RunOptions& options);

// Parses `document` then runs; parse and validation failures come back as
// a report with exit code 1.
RunResult run_document(const std::string& command, std::string_view document, const RunOptions& options);

// Human-readable rendering of a report produced by run().
std::string render_text(const Json& report);

}  // namespace logfol::cli
