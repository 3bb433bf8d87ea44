#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coherence {

/// Operand shapes do not agree (matrix sizes, Kraus dims, subsystem factorization).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the domain of the operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix failed the density-matrix invariants. `violations()` lists each
/// failed invariant by name, e.g. "hermitian", "positive", "unit_trace".
class InvalidStateError : public std::invalid_argument {
 public:
  InvalidStateError(const std::string& what, std::vector<std::string> violations)
      : std::invalid_argument(what), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Malformed JSON input; the message names the offending field.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-check inside a demonstration failed; the message names the quantity.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coherence
