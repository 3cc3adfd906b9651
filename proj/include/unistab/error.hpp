#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace unistab {

/// Invalid combination of construction parameters (field, involution, sizes).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The configuration is constructible but outside what the checks support
/// (characteristic 2 isotropy, the excluded field F_2, ...).
class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size budget would be exceeded. Carries the estimated size that
/// triggered the refusal.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t estimate, std::uint64_t budget)
      : std::runtime_error(what + " (estimated " + std::to_string(estimate) + ", budget " +
                           std::to_string(budget) + ")"),
        estimate_(estimate),
        budget_(budget) {}

  std::uint64_t estimate() const noexcept { return estimate_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t budget_;
};

}  // namespace unistab
