#pragma once

#include <stdexcept>
#include <string>

namespace bbc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (files, flags, out-of-range parameters).
class InputError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands belong to different fields") {}
};

/// A randomized computation could not certify its result within its retry budget.
class NotCertified : public Error {
 public:
  using Error::Error;
};

/// The chosen prime is unlucky for a modular computation; the caller should pick another.
class BadPrime : public Error {
 public:
  using Error::Error;
};

/// Combinatorial enumeration exceeded its configured cap.
class SearchTooLarge : public Error {
 public:
  using Error::Error;
};

/// Nullities or occurrence counts that cannot come from a real primary form.
class InconsistentNullity : public Error {
 public:
  using Error::Error;
};

}  // namespace bbc
