#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

// Bad input data or an operation applied outside its domain of validity.
// The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedShape : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotApplicable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class Unbounded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Requested computation exceeds a declared cost gate (e.g. FEM at large k).
class CostGate : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical breakdown of an iterative method. The CLI maps these to exit 3.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MeshFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

// Enumeration would exceed the configured memory budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spectra
