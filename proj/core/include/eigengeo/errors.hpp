#pragma once

#include <stdexcept>
#include <string>

namespace eigengeo {

// Input or domain errors: the caller handed us something the geometry is not
// defined for. The CLI maps these to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical breakdowns inside an otherwise valid computation (exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two eigenvalues are closer than the gap tolerance, so the spectral chart
// (and every formula with a 1/(l_a - l_b) pole) is undefined there.
class NearDegenerateSpectrum : public DomainError {
 public:
  NearDegenerateSpectrum(const std::string& what, double gap, double tolerance)
      : DomainError(what), gap_(gap), tolerance_(tolerance) {}
  double gap() const noexcept { return gap_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  double gap_;
  double tolerance_;
};

class NotPositiveDefinite : public DomainError {
 public:
  using DomainError::DomainError;
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class IndexOutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

class QuadratureUnderflow : public NumericError {
 public:
  using NumericError::NumericError;
};

class OptimizerFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace eigengeo
