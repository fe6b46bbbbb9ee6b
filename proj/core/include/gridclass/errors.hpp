#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridclass {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (matrix text, permutation text, formula text).
/// `line` and `column` are 1-based; 0 means "not applicable".
class InputError : public Error {
 public:
  InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A resource cap (automaton states, diagram nodes, formula size, model size)
/// was hit. `provenance` names the construction or subformula responsible.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::string provenance)
      : Error(provenance.empty() ? what : what + " [while building: " + provenance + "]"),
        provenance_(std::move(provenance)) {}

  const std::string& provenance() const noexcept { return provenance_; }

 private:
  std::string provenance_;
};

/// The formula mentions a relation that is not part of the structure or
/// signature it is evaluated against.
class SignatureError : public Error {
 public:
  using Error::Error;
};

}  // namespace gridclass
