#pragma once

#include <stdexcept>
#include <string>

namespace omcv {

// Base of everything the library throws. Callers that only care about
// "did the pipeline fail" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A physical parameter is outside its admissible domain (non-positive mass,
// negative temperature, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An operation was asked to act outside its mathematical domain: unstable
// drift matrix, non-physical covariance, photon budget below the floor.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical routine did not reach its target. `achieved` carries the
// residual or error estimate at the point of failure.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class NonConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
  double residual() const noexcept { return achieved(); }
};

// Malformed config file, unknown key, bad sweep path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace omcv
