#pragma once

#include <stdexcept>
#include <string>

namespace gaspace {

/// Malformed or mismatched input values (schema mismatch, bad gene, bad mask).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration (metric not allowed for a schema, bad engine parameters).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is not defined for the given schema, e.g. the
/// better-half volume of a discrete population.
class NotApplicable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Objective evaluation failed inside the engine.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gaspace
