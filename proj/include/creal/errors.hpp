#pragma once

#include <stdexcept>
#include <string>

namespace cr {

// Two families: malformed input (usage errors) and failures of the
// mathematics on well-formed input (domain errors). The CLI maps them to
// exit status 2 and 1 respectively.

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public UsageError {
 public:
  using UsageError::UsageError;
};

class ZeroDenominator : public UsageError {
 public:
  ZeroDenominator() : UsageError("zero denominator") {}
};

class InvalidProgram : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Precondition violated by the caller (e.g. lo >= hi, empty cover).
class InvalidArgument : public UsageError {
 public:
  using UsageError::UsageError;
};

/// A machine-backed approximator needed more interpreter steps than allowed.
class BudgetExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace cr
