#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfock {

// Base class for all qfock failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed argument: letter/site/index out of range, wrong dimensions.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Violated operation precondition (exact-domain inequality, probe hypothesis).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Required state is missing (Gram degree not built, factor not available).
class StateError : public Error {
 public:
  using Error::Error;
};

// Request exceeds a configured capability (memory budget, brute-force ceiling).
class CapabilityError : public Error {
 public:
  CapabilityError(const std::string& what, std::size_t required_bytes = 0,
                  std::size_t budget_bytes = 0)
      : Error(what), required_bytes(required_bytes), budget_bytes(budget_bytes) {}

  std::size_t required_bytes;
  std::size_t budget_bytes;
};

// The Gram matrix failed the strict positivity guard. Definiteness is
// guaranteed for q_max < 1, so this signals that degree/precision limits
// were exceeded; it is never silently regularized away.
class DefinitenessError : public Error {
 public:
  DefinitenessError(const std::string& what, int degree, double value)
      : Error(what), degree(degree), value(value) {}

  int degree;
  double value;
};

// Strict-mode degree overflow: a creation would push nonzero mass past
// the truncation ceiling.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Config file rejected (parse error, unknown field, invalid value).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfock
