#pragma once

#include <stdexcept>
#include <string>

namespace rseven {

/// Invalid argument: zero/negative where a positive integer is required,
/// mismatched (r, s) parameters, malformed input.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A theorem hypothesis is violated by otherwise well-formed input.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Input is valid but beyond the configured computational ceiling.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An invariant that holds by construction was observed to fail. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A floating-point oracle disagreed with exact rounding beyond tolerance.
class OracleInconsistency : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace rseven
