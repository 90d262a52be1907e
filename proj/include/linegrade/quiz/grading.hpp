#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "linegrade/engine/matcher.hpp"
#include "linegrade/errors.hpp"
#include "linegrade/quiz/bank.hpp"

namespace linegrade::quiz {

struct HintCounts {
  std::size_t chars = 0;
  std::size_t lexemes = 0;
  friend bool operator==(const HintCounts&, const HintCounts&) = default;
};

struct GradeResult {
  double raw_fraction = 0.0;
  double penalty_total = 0.0;
  double final_fraction = 0.0;
  /// Set iff some template matched the text fully.
  std::optional<std::string> matched_answer_id;
  /// Template used for feedback, highlighting and hints.
  std::size_t selected_answer = 0;
  std::string feedback;
  engine::MatchResult match;

  friend bool operator==(const GradeResult&, const GradeResult&) = default;
};

/// A matcher error raised while grading against a particular template.
class GradingError : public Error {
 public:
  GradingError(std::string question_id, std::string answer_id, std::string cause_kind,
               const std::string& message)
      : Error("question '" + question_id + "' answer '" + answer_id + "': " + message),
        question_id_(std::move(question_id)),
        answer_id_(std::move(answer_id)),
        cause_kind_(std::move(cause_kind)) {}
  const std::string& question_id() const noexcept { return question_id_; }
  const std::string& answer_id() const noexcept { return answer_id_; }
  const std::string& cause_kind() const noexcept { return cause_kind_; }
  const char* kind() const noexcept override { return "GradingError"; }

 private:
  std::string question_id_;
  std::string answer_id_;
  std::string cause_kind_;
};

double penalty_for(const HintPolicy& policy, const HintCounts& hints);

/// Best fraction among fully matching templates, minus hint penalties and
/// clamped at 0. Without a full match the selected template is the one of
/// highest fraction with the longest viable prefix, earliest on ties.
GradeResult grade_response(const Question& question, std::string_view text,
                           const HintCounts& hints = {});

}  // namespace linegrade::quiz
