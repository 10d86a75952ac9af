#pragma once

#include <stdexcept>
#include <string>

namespace anai {

// Base of everything the library throws. The CLI maps the three families
// below onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  // Class name, used for diagnostics and sweep error markers.
  virtual const char* kind() const noexcept { return "Error"; }
};

// Family 1: malformed or out-of-contract input.
class InputError : public Error {
 public:
  const char* kind() const noexcept override { return "InputError"; }
  using Error::Error;
};

// A value violated a domain constraint. `field` is a dotted path such as
// "autonomy.capacity" (empty when the caller has no path context).
class ValidationError : public InputError {
 public:
  const char* kind() const noexcept override { return "ValidationError"; }
  ValidationError(std::string field, std::string constraint)
      : InputError(field.empty() ? constraint : field + ": " + constraint),
        field_(std::move(field)),
        constraint_(std::move(constraint)) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string field_;
  std::string constraint_;
};

// The document could not be tokenized at all.
class SyntaxError : public InputError {
 public:
  const char* kind() const noexcept override { return "SyntaxError"; }
  SyntaxError(std::string what, std::size_t position)
      : InputError(std::move(what)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class InvalidTau : public InputError {
 public:
  const char* kind() const noexcept override { return "InvalidTau"; }
  using InputError::InputError;
};

// Family 2: numerical failure.
class NumericalError : public Error {
 public:
  const char* kind() const noexcept override { return "NumericalError"; }
  using Error::Error;
};

class NonFiniteState : public NumericalError {
 public:
  const char* kind() const noexcept override { return "NonFiniteState"; }
  using NumericalError::NumericalError;
};

// RK4 overshot a state bound by more than the clamp tolerance; the grid is
// too coarse for the dynamics.
class ClampViolation : public NumericalError {
 public:
  const char* kind() const noexcept override { return "ClampViolation"; }
  using NumericalError::NumericalError;
};

class DegenerateTrajectory : public NumericalError {
 public:
  const char* kind() const noexcept override { return "DegenerateTrajectory"; }
  using NumericalError::NumericalError;
};

class DegenerateSeries : public NumericalError {
 public:
  const char* kind() const noexcept override { return "DegenerateSeries"; }
  using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
 public:
  const char* kind() const noexcept override { return "NonConvergence"; }
  using NumericalError::NumericalError;
};

class UnconvergedFit : public NumericalError {
 public:
  const char* kind() const noexcept override { return "UnconvergedFit"; }
  using NumericalError::NumericalError;
};

// Family 3: filesystem trouble.
class IoError : public Error {
 public:
  const char* kind() const noexcept override { return "IoError"; }
  using Error::Error;
};

}  // namespace anai
