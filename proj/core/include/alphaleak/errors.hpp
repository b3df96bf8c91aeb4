#pragma once

#include <stdexcept>
#include <string>

namespace alphaleak {

// Raised when an input violates a documented precondition or invariant.
// `kind` carries the stable error name (e.g. "NegativeMass") that the CLI
// prints to stderr.
class InvalidInput : public std::runtime_error {
 public:
  InvalidInput(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Raised when an iterative or budgeted computation fails to finish
// (NonConvergence, BudgetExceeded).
class ComputeFailure : public std::runtime_error {
 public:
  ComputeFailure(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Internal cross-route consistency check. These identities hold algebraically;
// a violation means a numerical bug, so it is reported as a logic error.
void check_identity(bool ok, const char* what);

}  // namespace alphaleak
