#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hallforge {

/// Raised when an exhaustive enumeration would visit more candidates than the
/// configured budget allows.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t requested, std::uint64_t budget, const std::string& context)
      : std::runtime_error("enumeration too large: " + context + " needs " + std::to_string(requested) +
                           " candidates, budget is " + std::to_string(budget)),
        requested_(requested),
        budget_(budget) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t requested_;
  std::uint64_t budget_;
};

/// A caller broke a documented precondition (shape mismatch, foreign quiver, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// d∘d ≠ 0, or components that are not projective.
class InvalidComplex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hallforge
