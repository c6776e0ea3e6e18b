#pragma once

#include <stdexcept>
#include <string>

namespace lincx {

// Base of every error the library throws. Catch this to handle all of them.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrimePower : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class MixedFields : public Error {
 public:
  MixedFields() : Error("operands belong to different fields") {}
};

// Wrong subspace dimension, grade or degree for the requested operation.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A containment precondition (U ⊆ W and the like) does not hold.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidPolarity : public Error {
 public:
  using Error::Error;
};

class NotSingularFree : public Error {
 public:
  using Error::Error;
};

class DegenerateAmbient : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A computation that must succeed by theory did not; indicates a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace lincx
