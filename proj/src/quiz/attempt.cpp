#include "linegrade/quiz/attempt.hpp"

#include <algorithm>

namespace linegrade::quiz {

const char* to_string(AttemptState state) {
  switch (state) {
    case AttemptState::Open: return "open";
    case AttemptState::Completed: return "completed";
    case AttemptState::GivenUp: return "given_up";
  }
  return "?";
}

std::optional<AttemptState> attempt_state_from_string(std::string_view s) {
  if (s == "open") return AttemptState::Open;
  if (s == "completed") return AttemptState::Completed;
  if (s == "given_up") return AttemptState::GivenUp;
  return std::nullopt;
}

Attempt start_attempt(std::string attempt_id, const Question& question, std::optional<Mode> mode) {
  Attempt a;
  a.attempt_id = std::move(attempt_id);
  a.question_id = question.id;
  a.mode = mode.value_or(question.mode);
  return a;
}

Attempt submit(Attempt attempt, const Question& question, std::string_view text,
               std::int64_t timestamp_ms, double pass_threshold) {
  if (attempt.state != AttemptState::Open) throw AttemptClosed();
  Submission s{std::string(text), timestamp_ms, grade_response(question, text, attempt.hints_used)};
  if (attempt.mode == Mode::Summative) {
    attempt.state = AttemptState::Completed;
    attempt.passed = s.grade.final_fraction >= pass_threshold;
  } else if (s.grade.raw_fraction >= 1.0) {
    attempt.state = AttemptState::Completed;
  }
  attempt.submissions.push_back(std::move(s));
  return attempt;
}

bool hints_allowed(const Attempt& attempt, const Question& question) {
  return attempt.mode == Mode::Formative && question.mode == Mode::Formative &&
         question.hints.enabled;
}

namespace {

// Highest-fraction template with the longest viable prefix of `text`.
std::size_t hint_target(const Question& q, std::string_view text) {
  double best = 0.0;
  for (const auto& t : q.answers) best = std::max(best, t.fraction);
  std::optional<std::size_t> pick;
  std::size_t pick_len = 0;
  bool pick_full = false;
  for (std::size_t i = 0; i < q.answers.size(); ++i) {
    if (q.answers[i].fraction != best) continue;
    const auto m = engine::match_full(q.answers[i].compiled, text);
    const bool full = m.verdict == engine::Verdict::Full;
    if (!pick || m.matched_prefix_len > pick_len || (m.matched_prefix_len == pick_len && full && !pick_full)) {
      pick = i;
      pick_len = m.matched_prefix_len;
      pick_full = full;
    }
  }
  return pick.value_or(0);
}

}  // namespace

std::pair<hint::Hint, Attempt> request_hint(Attempt attempt, const Question& question,
                                            hint::HintKind kind) {
  if (attempt.state != AttemptState::Open) throw AttemptClosed();
  if (!hints_allowed(attempt, question)) throw HintsDisabled();
  const std::string text = attempt.latest() ? attempt.latest()->text : std::string();
  const auto& target = question.answers[hint_target(question, text)];
  hint::Hint h = kind == hint::HintKind::NextChar ? hint::next_char_hint(target.compiled, text)
                                                  : hint::next_lexeme_hint(target.compiled, text);
  if (kind == hint::HintKind::NextChar)
    ++attempt.hints_used.chars;
  else
    ++attempt.hints_used.lexemes;
  return {std::move(h), std::move(attempt)};
}

Attempt give_up(Attempt attempt) {
  if (attempt.state != AttemptState::Open) throw AttemptClosed();
  attempt.state = AttemptState::GivenUp;
  return attempt;
}

}  // namespace linegrade::quiz
