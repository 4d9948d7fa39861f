#pragma once

#include <stdexcept>
#include <string>

namespace dpt {

// Inputs violate an operation's contract.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The requested exact computation exceeds the supported size caps.
struct UnsupportedSize : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph shape the operation cannot accept (non-regular where regularity is
// required, zero-degree vertex, empty local view).
struct InvalidGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arithmetic overflow or eigensolver non-convergence.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dpt
