#pragma once

#include <stdexcept>
#include <string>

namespace sgpc {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coefficient field left the admissible ellipticity band.
class UeaViolation : public Error {
 public:
  UeaViolation(const std::string& what, std::size_t element)
      : Error(what), element_(element) {}
  std::size_t element() const noexcept { return element_; }

 private:
  std::size_t element_;
};

// Dimension or size mismatch between coupled objects.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A numeric result left its admissible range (lost positivity, failed
// factorization, degenerate fit input).
class NumericError : public Error {
 public:
  using Error::Error;
};

// A brute-force reference path was asked to exceed its cost guard.
class CostGuardError : public Error {
 public:
  using Error::Error;
};

// Configuration / usage errors (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgpc
