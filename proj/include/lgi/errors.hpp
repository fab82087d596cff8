#pragma once

#include <stdexcept>
#include <string>

namespace lgi {

// Raised for parameter sets or arguments that violate a documented invariant.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a survival-conditioned quantity cannot be evaluated reliably
// (denominator under the positivity floor, or times outside the supported window).
class ConditioningError : public std::runtime_error {
 public:
  explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lgi
