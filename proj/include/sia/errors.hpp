#pragma once

#include <stdexcept>
#include <string>

namespace sia {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Thresholding or parsing produced a row with no positive entry.
class EmptyRowError : public Error {
 public:
  using Error::Error;
};

class NotStochasticError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NotApplicableError : public Error {
 public:
  using Error::Error;
};

class ExhaustedTriesError : public Error {
 public:
  using Error::Error;
};

class NotConsensusSetError : public Error {
 public:
  using Error::Error;
};

class UnknownNameError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class PoolClassViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sia
