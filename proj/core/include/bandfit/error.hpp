#pragma once

#include <stdexcept>
#include <string>

namespace bandfit {

enum class ErrorKind {
  contract,     // caller violated a precondition
  range,        // index outside [-N, N]
  data,         // malformed or insufficient input data
  convergence,  // quadrature tolerance not reached
  numerical,    // linear algebra failure
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error(ErrorKind::contract, what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what)
      : Error(ErrorKind::range, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what)
      : Error(ErrorKind::data, what) {}
};

/// Raised when adaptive integration cannot meet its tolerance. Carries the
/// best estimate reached so callers can still inspect it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_estimate)
      : Error(ErrorKind::convergence, what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::numerical, what) {}
};

}  // namespace bandfit
