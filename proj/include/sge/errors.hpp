#pragma once

#include <stdexcept>
#include <string>

namespace sge {

// Raised for arguments that violate an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A sampled wavefunction has non-negligible amplitude at the edge of its
// periodic window.
class BoundaryLeak : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sge
