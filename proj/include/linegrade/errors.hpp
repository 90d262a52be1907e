#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linegrade {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

/// Malformed or unsupported template syntax. `position` is a 0-based byte
/// offset into the pattern.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(message + " at offset " + std::to_string(position)),
        position_(position),
        message_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }
  const char* kind() const noexcept override { return "SyntaxError"; }

 private:
  std::size_t position_;
  std::string message_;
};

class MacroError : public Error {
 public:
  MacroError(std::size_t position, const std::string& message)
      : Error(message + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const char* kind() const noexcept override { return "MacroError"; }

 private:
  std::size_t position_;
};

class CompileError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "CompileError"; }
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "UnsupportedError"; }
};

/// The backtracking step budget ran out: the pattern is pathological for
/// this input, which says nothing about the answer's correctness.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t steps)
      : Error("backtracking step budget of " + std::to_string(steps) + " exhausted"),
        steps_(steps) {}
  std::size_t steps() const noexcept { return steps_; }
  const char* kind() const noexcept override { return "BudgetExceeded"; }

 private:
  std::size_t steps_;
};

class RecursionLimit : public Error {
 public:
  explicit RecursionLimit(std::size_t depth)
      : Error("recursion depth limit of " + std::to_string(depth) + " reached"), depth_(depth) {}
  std::size_t depth() const noexcept { return depth_; }
  const char* kind() const noexcept override { return "RecursionLimit"; }

 private:
  std::size_t depth_;
};

class CompletionBudgetExceeded : public Error {
 public:
  explicit CompletionBudgetExceeded(std::size_t budget)
      : Error("no completion within " + std::to_string(budget) + " characters"), budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }
  const char* kind() const noexcept override { return "CompletionBudgetExceeded"; }

 private:
  std::size_t budget_;
};

class AnalysisBudgetExceeded : public Error {
 public:
  explicit AnalysisBudgetExceeded(std::size_t budget)
      : Error("no member of the language within " + std::to_string(budget) + " characters"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }
  const char* kind() const noexcept override { return "AnalysisBudgetExceeded"; }

 private:
  std::size_t budget_;
};

class EmptyLanguage : public Error {
 public:
  EmptyLanguage() : Error("pattern matches no string") {}
  const char* kind() const noexcept override { return "EmptyLanguage"; }
};

}  // namespace linegrade
