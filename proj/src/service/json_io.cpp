#include "linegrade/service/json_io.hpp"

namespace linegrade::service {

namespace {

json span(std::size_t start, std::size_t end) { return json::array({start, end}); }

}  // namespace

json to_json(const engine::MatchResult& m) {
  json j{{"verdict", engine::to_string(m.verdict)},
         {"matched_prefix_len", m.matched_prefix_len},
         {"prefix_complete", m.prefix_complete},
         {"input_len", m.input_len}};
  json caps = json::array();
  for (const auto& c : m.captures) caps.push_back(c ? span(c->start, c->end) : json(nullptr));
  j["captures"] = std::move(caps);
  return j;
}

json to_json(const hint::HighlightSpans& h) {
  json j{{"green", span(h.green.start, h.green.end)}, {"red", span(h.red.start, h.red.end)}};
  if (h.hint)
    j["hint"] = {{"start", h.hint->start}, {"text", h.hint->text}, {"is_final", h.hint->is_final}};
  else
    j["hint"] = nullptr;
  return j;
}

json to_json(const hint::Hint& h) {
  return {{"kind", hint::to_string(h.kind)},
          {"payload", h.payload},
          {"is_final", h.is_final},
          {"prefix_len", h.prefix_len}};
}

json to_json(const hint::Completion& c) {
  return {{"prefix_len", c.prefix_len}, {"text", c.text}, {"total_len", c.total_len()}};
}

json to_json(const quiz::HintCounts& h) { return {{"char", h.chars}, {"lexeme", h.lexemes}}; }

json to_json(const quiz::GradeResult& g) {
  return {{"raw_fraction", g.raw_fraction},
          {"penalty_total", g.penalty_total},
          {"final_fraction", g.final_fraction},
          {"matched_answer_id", g.matched_answer_id ? json(*g.matched_answer_id) : json(nullptr)},
          {"feedback", g.feedback},
          {"match", to_json(g.match)},
          {"highlight", to_json(hint::highlight(g.match))}};
}

json to_json(const quiz::Attempt& a) {
  json subs = json::array();
  for (const auto& s : a.submissions)
    subs.push_back({{"text", s.text}, {"timestamp_ms", s.timestamp_ms}, {"grade", to_json(s.grade)}});
  return {{"attempt_id", a.attempt_id},
          {"question_id", a.question_id},
          {"mode", quiz::to_string(a.mode)},
          {"state", quiz::to_string(a.state)},
          {"passed", a.passed ? json(*a.passed) : json(nullptr)},
          {"hints_used", to_json(a.hints_used)},
          {"submissions", std::move(subs)}};
}

json to_json(const syntax::PatternMetrics& m) {
  return {{"shortest_answer", m.shortest_answer},
          {"shortest_answer_chars", m.shortest_answer_chars},
          {"shortest_answer_tokens", m.shortest_answer_tokens},
          {"path_count", m.path_count},
          {"uses_recursion", m.uses_recursion},
          {"uses_backreferences", m.uses_backreferences},
          {"capture_group_count", m.capture_group_count}};
}

json question_summary(const quiz::Question& q) {
  return {{"id", q.id},
          {"prompt", q.prompt},
          {"mode", quiz::to_string(q.mode)},
          {"hints",
           {{"enabled", q.hints.enabled && q.mode == quiz::Mode::Formative},
            {"char_penalty", q.hints.char_penalty},
            {"lexeme_penalty", q.hints.lexeme_penalty}}}};
}

json error_body(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

json error_body(const Error& e) {
  json j = error_body(e.kind(), e.what());
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    j["error"]["message"] = s->message();
    j["error"]["offset"] = s->position();
  } else if (const auto* m = dynamic_cast<const MacroError*>(&e)) {
    j["error"]["offset"] = m->position();
  }
  return j;
}

}  // namespace linegrade::service
