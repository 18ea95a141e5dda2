#pragma once

#include <stdexcept>
#include <string>

namespace softttl {

// Iterative routine failed to reach its tolerance (quadrature, bisection,
// fixed point). Carries whatever diagnostic the caller attached.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Requested target cannot be met by any feasible solution
// (utility target above the cap, fairness criterion unattainable, ...).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Operands with incompatible discretizations (T, K).
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace softttl
