#pragma once

#include <stdexcept>
#include <string>

namespace wrightstab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A function could not be evaluated at the requested point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a node, curve or map.
class DomainError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

// The Schwarzian is undefined because f' vanishes.
class CriticalPointError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Sampling cannot decide a property (e.g. f' vanishes on a whole interval).
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

// The integrated solution left the bounded region |x| <= 1e12.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Fewer extrema than requested were found on the integration horizon.
class NoExtremumError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wrightstab
