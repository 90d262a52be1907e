#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linegrade/engine/matcher.hpp"
#include "linegrade/errors.hpp"
#include "linegrade/syntax/analysis.hpp"
#include "linegrade/syntax/ast.hpp"

namespace linegrade::quiz {

enum class Mode { Formative, Summative };

const char* to_string(Mode mode);
std::optional<Mode> mode_from_string(std::string_view s);

struct HintPolicy {
  bool enabled = false;
  double char_penalty = 0.0;
  double lexeme_penalty = 0.0;
};

struct AnswerTemplate {
  std::string id;
  std::string pattern;
  double fraction = 0.0;
  std::string feedback;
  syntax::RegexAst ast;  // macro-expanded
  engine::CompiledPattern compiled;
  syntax::PatternMetrics metrics;
};

struct Question {
  std::string id;
  std::string prompt;
  std::vector<AnswerTemplate> answers;
  HintPolicy hints;
  Mode mode = Mode::Formative;
};

struct QuestionBank {
  int version = 1;
  double pass_threshold = 0.6;
  std::vector<Question> questions;

  const Question* find(std::string_view id) const;
};

/// Malformed bank document. `path` points into the document, e.g.
/// "/questions/0/answers/1/fraction".
class BankFormatError : public Error {
 public:
  BankFormatError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)), message_(message) {}
  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }
  const char* kind() const noexcept override { return "BankFormatError"; }

 private:
  std::string path_;
  std::string message_;
};

/// An answer pattern failed to parse, expand, compile or analyze.
class PatternError : public Error {
 public:
  PatternError(std::string question_id, std::size_t answer_index, std::string cause_kind,
               std::optional<std::size_t> position, const std::string& message)
      : Error("question '" + question_id + "' answer " + std::to_string(answer_index) + ": " +
              message),
        question_id_(std::move(question_id)),
        answer_index_(answer_index),
        cause_kind_(std::move(cause_kind)),
        position_(position),
        message_(message) {}
  const std::string& question_id() const noexcept { return question_id_; }
  std::size_t answer_index() const noexcept { return answer_index_; }
  /// Kind of the underlying error, e.g. "SyntaxError".
  const std::string& cause_kind() const noexcept { return cause_kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }
  const char* kind() const noexcept override { return "PatternError"; }

 private:
  std::string question_id_;
  std::size_t answer_index_;
  std::string cause_kind_;
  std::optional<std::size_t> position_;
  std::string message_;
};

/// Parses, expands, compiles and analyzes one pattern. Rethrows failures as
/// PatternError.
AnswerTemplate build_template(const std::string& question_id, std::size_t index,
                              std::string id, std::string pattern, double fraction,
                              std::string feedback, engine::MatchOptions options = {});

QuestionBank load_bank(std::string_view document);
QuestionBank load_bank_file(const std::string& path);

}  // namespace linegrade::quiz
