#pragma once

#include <stdexcept>
#include <string>

namespace metric_sdr {

// Base of every error thrown by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed data: non-finite values, ragged rows, dimension mismatches.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A numeric argument outside its documented range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// An incompatible combination of options (metric vs response kind, method vs family).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Eigen solver failure, covariance not positive semidefinite, etc.
class NumericError : public Error {
 public:
  using Error::Error;
};

class RankError : public NumericError {
 public:
  using NumericError::NumericError;
};

class SlicingError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace metric_sdr
