#include "linegrade/quiz/grading.hpp"

#include <algorithm>
#include <cmath>

namespace linegrade::quiz {

namespace {

// Keeps sums like 3 x 0.1 from drifting off the decimal value a teacher wrote.
double tidy(double x) { return std::round(x * 1e9) / 1e9; }

engine::MatchResult match_template(const Question& q, const AnswerTemplate& t,
                                   std::string_view text) {
  try {
    return engine::match_full(t.compiled, text);
  } catch (const Error& e) {
    throw GradingError(q.id, t.id, e.kind(), e.what());
  }
}

}  // namespace

double penalty_for(const HintPolicy& policy, const HintCounts& hints) {
  return tidy(static_cast<double>(hints.chars) * policy.char_penalty +
              static_cast<double>(hints.lexemes) * policy.lexeme_penalty);
}

GradeResult grade_response(const Question& question, std::string_view text,
                           const HintCounts& hints) {
  std::vector<engine::MatchResult> matches;
  matches.reserve(question.answers.size());
  for (const auto& t : question.answers) matches.push_back(match_template(question, t, text));

  GradeResult r;
  std::optional<std::size_t> full;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (matches[i].verdict != engine::Verdict::Full) continue;
    if (!full || question.answers[i].fraction > question.answers[*full].fraction) full = i;
  }

  if (full) {
    r.selected_answer = *full;
    r.raw_fraction = question.answers[*full].fraction;
    r.matched_answer_id = question.answers[*full].id;
  } else {
    double best = 0.0;
    for (const auto& t : question.answers) best = std::max(best, t.fraction);
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < matches.size(); ++i) {
      if (question.answers[i].fraction != best) continue;
      if (!pick || matches[i].matched_prefix_len > matches[*pick].matched_prefix_len) pick = i;
    }
    r.selected_answer = pick.value_or(0);
  }
  r.match = matches[r.selected_answer];
  r.feedback = question.answers[r.selected_answer].feedback;
  r.penalty_total = penalty_for(question.hints, hints);
  r.final_fraction = std::max(0.0, tidy(r.raw_fraction - r.penalty_total));
  return r;
}

}  // namespace linegrade::quiz
