#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

// Base of every error the library throws. The CLI maps subclasses onto exit
// codes: contract-style errors exit 3, numeric failures exit 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (mismatched sizes, bad parameters).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the supported range (memory guards, table limits).
class RangeError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Malformed input file.
class FormatError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Inconsistent configuration, e.g. overlapping major arcs.
class ConfigError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Evaluation at a pole of a meromorphic function.
class PoleError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Zero table does not reach the requested height.
class CoverageError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Floating-point failure: overflow, non-bracketing refinement.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An exactness check that can only fail through a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace moebius
