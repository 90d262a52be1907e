#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linegrade/errors.hpp"
#include "linegrade/hint/hints.hpp"
#include "linegrade/quiz/grading.hpp"

namespace linegrade::quiz {

enum class AttemptState { Open, Completed, GivenUp };

const char* to_string(AttemptState state);
std::optional<AttemptState> attempt_state_from_string(std::string_view s);

struct Submission {
  std::string text;
  std::int64_t timestamp_ms = 0;
  GradeResult grade;
  friend bool operator==(const Submission&, const Submission&) = default;
};

struct Attempt {
  std::string attempt_id;
  std::string question_id;
  Mode mode = Mode::Formative;
  AttemptState state = AttemptState::Open;
  std::vector<Submission> submissions;
  HintCounts hints_used;
  /// Whether a summative attempt reached the pass threshold.
  std::optional<bool> passed;

  const Submission* latest() const {
    return submissions.empty() ? nullptr : &submissions.back();
  }
  friend bool operator==(const Attempt&, const Attempt&) = default;
};

class HintsDisabled : public Error {
 public:
  HintsDisabled() : Error("hints are disabled for this attempt") {}
  const char* kind() const noexcept override { return "HintsDisabled"; }
};

class AttemptClosed : public Error {
 public:
  AttemptClosed() : Error("attempt is closed") {}
  const char* kind() const noexcept override { return "AttemptClosed"; }
};

Attempt start_attempt(std::string attempt_id, const Question& question,
                      std::optional<Mode> mode = std::nullopt);

/// Grades `text` with the hints used so far. Formative attempts complete on
/// a full-credit answer; summative attempts complete on their first
/// submission.
Attempt submit(Attempt attempt, const Question& question, std::string_view text,
               std::int64_t timestamp_ms, double pass_threshold = 0.6);

bool hints_allowed(const Attempt& attempt, const Question& question);

/// Hint against the template selected for the latest submission (the empty
/// answer when there is none).
std::pair<hint::Hint, Attempt> request_hint(Attempt attempt, const Question& question,
                                            hint::HintKind kind);

Attempt give_up(Attempt attempt);

}  // namespace linegrade::quiz
