#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monoidlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line()` is 1-based, 0 when the input has no lines.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonConfluent : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t budget)
      : Error(what), budget_(budget) {}

  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

class RelationViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace monoidlab
