#include "linegrade/service/api.hpp"

#include <cstdlib>

#include "linegrade/syntax/macros.hpp"
#include "linegrade/syntax/parser.hpp"

namespace linegrade::service {

namespace {

class BadRequest : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "BadRequest"; }
};

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw BadRequest("request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw BadRequest(std::string("invalid JSON: ") + e.what());
  }
}

std::string string_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw BadRequest(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

int status_for(const Error& e) {
  if (dynamic_cast<const UnknownAttempt*>(&e) || dynamic_cast<const UnknownQuestion*>(&e))
    return 404;
  if (dynamic_cast<const quiz::AttemptClosed*>(&e)) return 409;
  if (dynamic_cast<const quiz::HintsDisabled*>(&e)) return 403;
  if (dynamic_cast<const BadRequest*>(&e) || dynamic_cast<const SyntaxError*>(&e) ||
      dynamic_cast<const MacroError*>(&e))
    return 400;
  // Pattern budget failures are authoring problems, not client errors.
  return 500;
}

template <class F>
ApiResponse guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return {status_for(e), error_body(e)};
  } catch (const std::exception& e) {
    return {500, error_body("InternalError", e.what())};
  }
}

json penalty_projection(const quiz::Attempt& a, const quiz::Question& q) {
  const double penalty = quiz::penalty_for(q.hints, a.hints_used);
  return {{"hints_used", to_json(a.hints_used)},
          {"penalty_total", penalty},
          {"max_final_fraction", std::max(0.0, 1.0 - penalty)}};
}

}  // namespace

json test_candidate(const engine::CompiledPattern& cp, const std::string& answer) {
  json j{{"answer", answer}};
  const auto m = engine::match_full(cp, answer);
  j["verdict"] = engine::to_string(m.verdict);
  j["matched_prefix_len"] = m.matched_prefix_len;
  j["prefix_complete"] = m.prefix_complete;
  j["highlight"] = to_json(hint::highlight(m));
  try {
    j["completion"] = to_json(hint::shortest_completion(cp, answer));
  } catch (const Error& e) {
    j["completion"] = nullptr;
    j["completion_error"] = error_body(e)["error"];
  }
  return j;
}

ApiResponse Api::test_regex(const std::string& body) const {
  return guarded([&] {
    const json req = parse_body(body);
    const std::string pattern = string_field(req, "pattern");
    std::vector<std::string> answers;
    if (req.contains("answers")) {
      const json& a = req["answers"];
      if (!a.is_array()) throw BadRequest("field 'answers' must be an array of strings");
      for (const auto& s : a) {
        if (!s.is_string()) throw BadRequest("field 'answers' must be an array of strings");
        answers.push_back(s.get<std::string>());
      }
    }
    engine::MatchOptions options;
    if (req.contains("case_sensitive") && req["case_sensitive"].is_boolean())
      options.case_sensitive = req["case_sensitive"].get<bool>();
    const auto cp = engine::compile(syntax::expand_macros(syntax::parse(pattern)), options);
    json results = json::array();
    for (const auto& a : answers) results.push_back(test_candidate(cp, a));
    return ApiResponse{200, json{{"results", std::move(results)}}};
  });
}

ApiResponse Api::create_attempt(const std::string& body) {
  return guarded([&] {
    const json req = parse_body(body);
    const std::string qid = string_field(req, "question_id");
    std::optional<quiz::Mode> mode;
    if (req.contains("mode") && !req["mode"].is_null()) {
      if (!req["mode"].is_string()) throw BadRequest("field 'mode' must be a string");
      mode = quiz::mode_from_string(req["mode"].get<std::string>());
      if (!mode) throw BadRequest("mode must be \"formative\" or \"summative\"");
    }
    return ApiResponse{201, to_json(store_->create(qid, mode))};
  });
}

ApiResponse Api::submit_answer(const std::string& attempt_id, const std::string& body) {
  return guarded([&] {
    const json req = parse_body(body);
    const std::string text = string_field(req, "text");
    auto [attempt, grade] = store_->answer(attempt_id, text);
    return ApiResponse{200, json{{"attempt", to_json(attempt)},
                                 {"grade", to_json(grade)},
                                 {"highlight", to_json(hint::highlight(grade.match))}}};
  });
}

ApiResponse Api::hint(const std::string& attempt_id, const std::string& body) {
  return guarded([&] {
    const json req = parse_body(body);
    const auto kind = hint::hint_kind_from_string(string_field(req, "kind"));
    if (!kind) throw BadRequest("kind must be \"char\" or \"lexeme\"");
    auto [attempt, h] = store_->hint(attempt_id, *kind);
    const auto* q = store_->bank().find(attempt.question_id);
    json out{{"hint", to_json(h)}, {"attempt", to_json(attempt)}};
    out["penalty"] = penalty_projection(attempt, *q);
    return ApiResponse{200, std::move(out)};
  });
}

ApiResponse Api::give_up(const std::string& attempt_id) {
  return guarded([&] { return ApiResponse{200, to_json(store_->give_up(attempt_id))}; });
}

ApiResponse Api::get_attempt(const std::string& attempt_id) const {
  return guarded([&] { return ApiResponse{200, to_json(store_->get(attempt_id))}; });
}

ApiResponse Api::list_questions() const {
  return guarded([&] {
    json list = json::array();
    for (const auto& q : store_->bank().questions) list.push_back(question_summary(q));
    return ApiResponse{200, json{{"questions", std::move(list)}}};
  });
}

ApiResponse Api::get_question(const std::string& question_id) const {
  return guarded([&] {
    const auto* q = store_->bank().find(question_id);
    if (!q) throw UnknownQuestion(question_id);
    return ApiResponse{200, question_summary(*q)};
  });
}

int resolve_port(std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PREG_PORT")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
    }
  }
  return 8750;
}

}  // namespace linegrade::service
