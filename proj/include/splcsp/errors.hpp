#pragma once

#include <stdexcept>
#include <string>

namespace splcsp {

// Base of every error this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("program contains no statement") {}
};

class OverlappingGraphs : public Error {
 public:
  using Error::Error;
};

class InstanceMismatch : public Error {
 public:
  using Error::Error;
};

class PartialAssignment : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class BadPreassignment : public Error {
 public:
  using Error::Error;
};

class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

class DisconnectedLifetime : public Error {
 public:
  using Error::Error;
};

// Malformed instance, spec, or graph files, and out-of-range references.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace splcsp
