#pragma once

#include <stdexcept>
#include <string>

namespace schmidt_forge {

// Invalid argument value: dimension out of range, parameter outside its
// interval, a state that violates a required symmetry.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what, double measured = 0.0)
      : std::domain_error(what), measured_(measured) {}

  // Deviation that triggered the error (asymmetry, residual, ...), or 0.
  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

// Shapes that do not fit together.
class StructuralError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A result that is mathematically impossible at the configured tolerance,
// e.g. an odd numerical Schmidt rank for an antisymmetric state.
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schmidt_forge
