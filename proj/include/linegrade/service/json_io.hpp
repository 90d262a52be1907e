#pragma once

#include "json.hpp"
#include "linegrade/engine/matcher.hpp"
#include "linegrade/hint/hints.hpp"
#include "linegrade/quiz/attempt.hpp"
#include "linegrade/quiz/bank.hpp"
#include "linegrade/quiz/grading.hpp"
#include "linegrade/syntax/analysis.hpp"

namespace linegrade::service {

using nlohmann::json;

json to_json(const engine::MatchResult& m);
json to_json(const hint::HighlightSpans& h);
json to_json(const hint::Hint& h);
json to_json(const hint::Completion& c);
json to_json(const quiz::HintCounts& h);
json to_json(const quiz::GradeResult& g);
json to_json(const quiz::Attempt& a);
json to_json(const syntax::PatternMetrics& m);

/// Student view: id, prompt, mode and hint policy; never the patterns.
json question_summary(const quiz::Question& q);

/// {"error": {"kind", "message", "offset"?}}
json error_body(const Error& e);
json error_body(const std::string& kind, const std::string& message);

}  // namespace linegrade::service
