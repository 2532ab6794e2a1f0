#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wldl {

/// Base class of every error raised by the library. The category decides the
/// CLI exit code.
class Error : public std::runtime_error {
 public:
  enum class Category {
    Usage,            // bad arguments, mixed semirings, alphabet mismatch
    Syntax,           // parse errors
    Semantic,         // improper iterations, unsupported semirings, ...
    Budget,           // state budget exceeded
  };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(Category::Usage, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(Category::Syntax, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An iteration (`^+` on a path or an expression) whose body is not proper.
/// `offender` is the pretty-printed body.
class ImproperIteration : public Error {
 public:
  explicit ImproperIteration(const std::string& offender)
      : Error(Category::Semantic, "improper iteration body: " + offender), offender_(offender) {}

  const std::string& offender() const noexcept { return offender_; }

 private:
  std::string offender_;
};

class ImproperPlus : public ImproperIteration {
 public:
  using ImproperIteration::ImproperIteration;
};

class NonCommutativeHadamard : public Error {
 public:
  explicit NonCommutativeHadamard(const std::string& semiring)
      : Error(Category::Semantic, "Hadamard product needs a commutative semiring, got " + semiring) {}
};

class NotAField : public Error {
 public:
  explicit NotAField(const std::string& semiring)
      : Error(Category::Semantic, "equivalence is decided over fields only, got " + semiring) {}
};

class NotIdempotent : public Error {
 public:
  explicit NotIdempotent(const std::string& semiring)
      : Error(Category::Semantic, "weighted Buchi compilation needs an idempotent semiring, got " + semiring) {}
};

class UnsupportedOmegaSemiring : public Error {
 public:
  explicit UnsupportedOmegaSemiring(const std::string& semiring)
      : Error(Category::Semantic,
              "infinite-word evaluation is supported for boolean and minplus only, got " + semiring) {}
};

class StateBudgetExceeded : public Error {
 public:
  explicit StateBudgetExceeded(std::size_t limit)
      : Error(Category::Budget, "state budget of " + std::to_string(limit) +
                                    " exceeded (raise it with --max-states)"),
        limit_(limit) {}

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

}  // namespace wldl
