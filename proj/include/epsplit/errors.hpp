#pragma once

#include <stdexcept>
#include <string>

namespace epsplit {

// Violated precondition or type invariant at a public boundary
// (dimension mismatch, nonfinite input, bad parameter).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Empty feasible region.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "Should be impossible" state; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An iterative subsolver exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lastResidual)
      : std::runtime_error(what), lastResidual_(lastResidual) {}
  double lastResidual() const { return lastResidual_; }

 private:
  double lastResidual_;
};

}  // namespace epsplit
