#pragma once

#include <stdexcept>
#include <string>

namespace vcsample {

// Invalid argument, malformed input file, or mismatched objects.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Exhaustive enumeration refused because the ground set exceeds the family budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vcsample
