#pragma once

#include <stdexcept>
#include <string>

namespace hiring {

/// Raised when an instance, distribution, or policy violates its invariants.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the simplex core cannot produce an optimal vertex.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the brute-force oracles when an instance exceeds their size caps.
class SizeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace hiring
