#pragma once

#include <stdexcept>
#include <string>

namespace otl {

/// A value violates a documented invariant (bad problem, belief, model...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size bound (horizon, belief lattice, path enumeration) was exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query named a stage state the table does not contain.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Components were wired together inconsistently (policy vs. problem vs. model).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otl
