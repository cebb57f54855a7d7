#pragma once

#include <stdexcept>
#include <string>

namespace tunnelshift {

/// Input violates a documented precondition (bad domain, invalid mode, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to converge or produced non-finite values.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tunnelshift
