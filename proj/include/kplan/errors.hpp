#pragma once

#include <stdexcept>
#include <string>

namespace kplan {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index (time, state, action, stage) outside its valid range.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A sequence whose length does not match what the automaton requires.
class LengthError : public Error {
 public:
  using Error::Error;
};

/// A lookup (policy entry, table block) that has no value.
class MissingEntry : public Error {
 public:
  using Error::Error;
};

/// Malformed input text or file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that breaks a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration larger than the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Hard-constrained staging left some stage with no admissible macro-action.
class InfeasibleStage : public Error {
 public:
  InfeasibleStage(std::size_t stage, double min_complexity)
      : Error("stage " + std::to_string(stage) +
              " has no admissible macro-action (minimum achievable complexity " +
              std::to_string(min_complexity) + ")"),
        stage_(stage),
        min_complexity_(min_complexity) {}

  std::size_t stage() const noexcept { return stage_; }
  double min_complexity() const noexcept { return min_complexity_; }

 private:
  std::size_t stage_;
  double min_complexity_;
};

}  // namespace kplan
