#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avasskit {

/// 1-based position inside a parsed source text.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;
};

/// Malformed or inconsistent user input (wrong flavor, unknown state, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, SourceSpan span);

  const SourceSpan& span() const { return span_; }
  const std::string& detail() const { return detail_; }

 private:
  SourceSpan span_;
  std::string detail_;
};

/// A configured resource cap was hit (cycle cap, solver arity, sweep cap,
/// normal-form size). Never an answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace avasskit
