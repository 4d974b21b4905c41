#pragma once

#include <stdexcept>
#include <string>

namespace hotpotato {

/// Bad user input: malformed parameters, wrong dimensions, unsupported kernel.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical failure that signals a violated model assumption, typically a
/// kernel that is not strictly positive definite on the grid.
class ModelAssumptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hotpotato
