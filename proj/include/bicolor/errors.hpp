#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bicolor {

/// Raised when an enumeration or search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double estimate)
      : std::runtime_error(what + " (estimated " + std::to_string(static_cast<long double>(estimate)) +
                           " states)"),
        estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace bicolor
