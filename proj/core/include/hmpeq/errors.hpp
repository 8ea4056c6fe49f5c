#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmpeq {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class ScalarModeMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a model file. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Violation {
  std::string path;
  std::string message;
};

/// A structurally well-formed model that breaks one or more invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  static std::string summarize(const std::vector<Violation>& violations) {
    std::string out = "model violates its invariants";
    for (const auto& v : violations) out += "\n  " + v.path + ": " + v.message;
    return out;
  }

  std::vector<Violation> violations_;
};

}  // namespace hmpeq
