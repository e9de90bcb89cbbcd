#pragma once

#include <stdexcept>
#include <string>

namespace numsmooth {

/// A point lies outside the domain of the object being evaluated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or inconsistent arguments (size mismatch, bad index, degree mismatch).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial degree beyond the supported range 0..kMaxDegree.
class UnsupportedDegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed solution document; `field()` names the offending entry.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A time integrator produced non-finite coefficients.
class SolverBlowupError : public std::runtime_error {
 public:
  SolverBlowupError(long step, const std::string& what)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace numsmooth
