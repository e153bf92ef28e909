#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hanoi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller handed us something outside an operation's domain.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A move that violates the stacking rules under a preset without invalid-move semantics.
class IllegalMove : public Error {
public:
  using Error::Error;
};

class MalformedEncoding : public Error {
public:
  using Error::Error;
};

class CapExceeded : public Error {
public:
  using Error::Error;
};

/// A move sequence failed replay; `index` is the first offending move.
class PlanValidationError : public Error {
public:
  PlanValidationError(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Greedy rollout revisited a state.
class CycleError : public Error {
public:
  using Error::Error;
};

class CorruptedGraph : public Error {
public:
  using Error::Error;
};

class LearningError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownSolver : public Error {
public:
  using Error::Error;
};

}  // namespace hanoi
