#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pseudoreal {

/// Base of every error raised by the library. Callers that only need to
/// distinguish "bad input" from "numerical trouble" can catch the two
/// intermediate classes below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (shapes, parameters, files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not deliver its contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class InvalidGrid : public InputError {
 public:
  using InputError::InputError;
};

class ParameterOutOfRange : public InputError {
 public:
  using InputError::InputError;
};

class UnknownBuiltin : public InputError {
 public:
  using InputError::InputError;
};

class MissingParameter : public InputError {
 public:
  using InputError::InputError;
};

class InvalidRange : public InputError {
 public:
  using InputError::InputError;
};

class ZeroVector : public InputError {
 public:
  using InputError::InputError;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NearDefective : public NumericalError {
 public:
  NearDefective(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// The eigensolver ran out of iterations. Eigenvalues that did converge are
/// kept so callers can still report them.
class ConvergenceFailure : public NumericalError {
 public:
  ConvergenceFailure(const std::string& what,
                     std::vector<std::complex<double>> converged)
      : NumericalError(what), converged_(std::move(converged)) {}
  const std::vector<std::complex<double>>& converged() const noexcept {
    return converged_;
  }

 private:
  std::vector<std::complex<double>> converged_;
};

}  // namespace pseudoreal
