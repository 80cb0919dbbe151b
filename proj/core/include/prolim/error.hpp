#pragma once

#include <stdexcept>
#include <string>

namespace prolim {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source/target mismatch when composing maps.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// The base category lacks the capability an operation needs
/// (Hom enumeration, finite limits, ...).
class UnsupportedCapability : public Error {
 public:
  using Error::Error;
};

/// A bounded search ran out of depth or nodes before it could answer.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A supplied certificate or level datum failed verification.
class VerificationFailure : public Error {
 public:
  VerificationFailure(std::string what, std::string where)
      : Error(what + " (at " + where + ")"), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Caller violated an operation's precondition.
class PreconditionFailure : public Error {
 public:
  using Error::Error;
};

/// Integer arithmetic left the representable range, or a construction
/// left the category (e.g. a torsion cokernel of free abelian groups).
class ComputationError : public Error {
 public:
  using Error::Error;
};

}  // namespace prolim
