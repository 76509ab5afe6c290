#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace logfol {

// Root of every error raised by the library. The three branches below are
// the only classes callers need to dispatch on; the CLI maps them to exit
// codes 1, 2 and 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input does not satisfy a documented invariant. `field()` is a path such as
// "components[2].degree" (empty when the problem is not tied to one field).
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Input is well formed but a computation cannot produce its result.
class ComputationError : public Error {
 public:
  using Error::Error;
};

// A numeric cross-check exceeded its tolerance.
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace logfol
