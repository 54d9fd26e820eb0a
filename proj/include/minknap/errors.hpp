#pragma once

#include <stdexcept>
#include <string>

namespace minknap {

/// The instance (or a derived subproblem) has no 0/1 feasible point.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pseudo-polynomial routine would exceed its configured table size.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented preconditions.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace minknap
