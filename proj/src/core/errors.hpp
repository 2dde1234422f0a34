#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ltport {

// Model invariant violated; the message names the offending invariant.
class InvalidParams : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Riccati discriminant D <= 0: outside the normal-solution regime.
class NonNormalRegime : public std::domain_error {
public:
  explicit NonNormalRegime(double discriminant)
      : std::domain_error("non-normal regime: discriminant D = " +
                          std::to_string(discriminant) + " <= 0"),
        discriminant(discriminant) {}
  double discriminant;
};

// Denominator of C1/C2 below tolerance. Not expected for gamma > 1;
// reported rather than clamped.
class SingularDenominator : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegenerateDistribution : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(std::uint64_t required, std::uint64_t allowed)
      : std::runtime_error("strategy budget exceeded: " +
                           std::to_string(required) + " required, " +
                           std::to_string(allowed) + " allowed"),
        required(required), allowed(allowed) {}
  std::uint64_t required;
  std::uint64_t allowed;
};

class NonPositiveWealth : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ltport
