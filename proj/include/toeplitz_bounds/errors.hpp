#pragma once

#include <stdexcept>
#include <string>

namespace tb {

/// Base for every failure raised by the library. `numeric()` separates
/// numerical failures (CLI exit 1) from invalid input (CLI exit 2).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual bool numeric() const { return false; }
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidConfiguration : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Two zeros coincide and the operation needs simple zeros.
class RepeatedZero : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Evaluation point sits on a zero of the symbol.
class PointCollision : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NumericalBreakdown : public Error {
 public:
  using Error::Error;
  bool numeric() const override { return true; }
};

class NotStrictlyFeasible : public NumericalBreakdown {
 public:
  using NumericalBreakdown::NumericalBreakdown;
};

// Configuration outside the range where double precision is meaningful.
class ConditioningGuard : public NumericalBreakdown {
 public:
  using NumericalBreakdown::NumericalBreakdown;
};

}  // namespace tb
