#pragma once

#include <stdexcept>
#include <string>

namespace polyconv {

// Argument shapes disagree (vector length vs. variable count, alphabet sizes).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact enumeration was requested above the configured cap.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// certify() was asked for an epsilon that the verified objective does not beat.
class EpsilonTooLargeError : public std::runtime_error {
 public:
  EpsilonTooLargeError(double objective, double epsilon);

  double objective() const noexcept { return objective_; }
  double epsilon() const noexcept { return epsilon_; }

 private:
  double objective_;
  double epsilon_;
};

// A witness failed verification where a verified witness was required.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyconv
