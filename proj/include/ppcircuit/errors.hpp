#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppc {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a model function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The flux bias is outside the SQUID arch, where cos(pi gamma_L phi) <= 0 and
/// the Josephson inductance diverges.
class BeyondArchError : public DomainError {
 public:
  explicit BeyondArchError(double flux_quanta);
  double flux_quanta() const { return flux_quanta_; }

 private:
  double flux_quanta_;
};

/// Detection-chain calibration is unusable (non-positive background etc).
class CalibrationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Blue-sideband cooperativity at or above the self-oscillation threshold.
class InstabilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Failures raised by the fitting layer.
class FitError : public Error {
 public:
  using Error::Error;
};

class NonIdentifiableError : public FitError {
 public:
  using FitError::FitError;
};

class BackgroundEstimationError : public FitError {
 public:
  using FitError::FitError;
};

class DegenerateFitError : public FitError {
 public:
  using FitError::FitError;
};

class AmbiguityError : public FitError {
 public:
  using FitError::FitError;
};

/// A fit ran out of iterations without meeting its convergence test.
class ConvergenceError : public FitError {
 public:
  using FitError::FitError;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration: unknown keys, missing keys, bad grid spec.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ppc
