#pragma once

#include <stdexcept>
#include <string>

namespace graphcut {

/// Base of every error raised by the library. Each subclass maps onto one
/// CLI exit code (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument value: odd n, misaligned grid, unknown label, zero restarts...
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input too large for an exact enumeration.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Size or mass constraints that cannot be met.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Operands with incompatible structure (e.g. different block partitions).
class StructuralError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphcut
