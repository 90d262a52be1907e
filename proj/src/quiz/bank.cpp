#include "linegrade/quiz/bank.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "linegrade/syntax/macros.hpp"
#include "linegrade/syntax/parser.hpp"

namespace linegrade::quiz {

using nlohmann::json;

const char* to_string(Mode mode) { return mode == Mode::Formative ? "formative" : "summative"; }

std::optional<Mode> mode_from_string(std::string_view s) {
  if (s == "formative") return Mode::Formative;
  if (s == "summative") return Mode::Summative;
  return std::nullopt;
}

const Question* QuestionBank::find(std::string_view id) const {
  for (const auto& q : questions)
    if (q.id == id) return &q;
  return nullptr;
}

AnswerTemplate build_template(const std::string& question_id, std::size_t index, std::string id,
                              std::string pattern, double fraction, std::string feedback,
                              engine::MatchOptions options) {
  AnswerTemplate t;
  t.id = std::move(id);
  t.pattern = std::move(pattern);
  t.fraction = fraction;
  t.feedback = std::move(feedback);
  try {
    t.ast = syntax::expand_macros(syntax::parse(t.pattern));
    t.compiled = engine::compile(t.ast, options);
    t.metrics = syntax::analyze(t.ast, syntax::kAnalysisBudget, options);
  } catch (const SyntaxError& e) {
    throw PatternError(question_id, index, e.kind(), e.position(), e.message());
  } catch (const MacroError& e) {
    throw PatternError(question_id, index, e.kind(), e.position(), e.what());
  } catch (const Error& e) {
    throw PatternError(question_id, index, e.kind(), std::nullopt, e.what());
  }
  return t;
}

namespace {

class Reader {
 public:
  explicit Reader(const json& doc) : doc_(doc) {}

  QuestionBank read() {
    if (!doc_.is_object()) fail("", "document must be an object");
    QuestionBank bank;
    const json& version = require(doc_, "", "version");
    if (!version.is_number_integer() || version.get<int>() != 1)
      fail("/version", "unsupported version (expected 1)");
    if (doc_.contains("pass_threshold"))
      bank.pass_threshold = fraction(doc_["pass_threshold"], "/pass_threshold");
    const json& questions = require(doc_, "", "questions");
    if (!questions.is_array()) fail("/questions", "must be an array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < questions.size(); ++i) {
      const std::string path = "/questions/" + std::to_string(i);
      Question q = question(questions[i], path);
      if (!ids.insert(q.id).second) fail(path + "/id", "duplicate question id '" + q.id + "'");
      bank.questions.push_back(std::move(q));
    }
    return bank;
  }

 private:
  [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
    throw BankFormatError(path.empty() ? "/" : path, msg);
  }

  static const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
  }

  static std::string string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "must be a string");
    return v.get<std::string>();
  }

  static double fraction(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "must be a number");
    const double d = v.get<double>();
    if (!(d >= 0.0 && d <= 1.0)) fail(path, "must lie in [0, 1]");
    return d;
  }

  static double penalty(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "must be a number");
    const double d = v.get<double>();
    if (!(d >= 0.0)) fail(path, "must not be negative");
    return d;
  }

  static Question question(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    Question q;
    q.id = string(require(v, path, "id"), path + "/id");
    if (q.id.empty()) fail(path + "/id", "must not be empty");
    q.prompt = string(require(v, path, "prompt"), path + "/prompt");
    if (v.contains("mode")) {
      auto m = mode_from_string(string(v["mode"], path + "/mode"));
      if (!m) fail(path + "/mode", "must be \"formative\" or \"summative\"");
      q.mode = *m;
    }
    q.hints.enabled = q.mode == Mode::Formative;
    if (v.contains("hints")) {
      const json& h = v["hints"];
      const std::string hp = path + "/hints";
      if (!h.is_object()) fail(hp, "must be an object");
      if (h.contains("enabled")) {
        if (!h["enabled"].is_boolean()) fail(hp + "/enabled", "must be a boolean");
        q.hints.enabled = h["enabled"].get<bool>();
      }
      if (h.contains("char_penalty"))
        q.hints.char_penalty = penalty(h["char_penalty"], hp + "/char_penalty");
      if (h.contains("lexeme_penalty"))
        q.hints.lexeme_penalty = penalty(h["lexeme_penalty"], hp + "/lexeme_penalty");
    }
    engine::MatchOptions options;
    if (v.contains("case_sensitive")) {
      if (!v["case_sensitive"].is_boolean()) fail(path + "/case_sensitive", "must be a boolean");
      options.case_sensitive = v["case_sensitive"].get<bool>();
    }

    const json& answers = require(v, path, "answers");
    if (!answers.is_array() || answers.empty()) fail(path + "/answers", "must be a non-empty array");
    std::set<std::string> answer_ids;
    bool has_full = false;
    for (std::size_t i = 0; i < answers.size(); ++i) {
      const std::string ap = path + "/answers/" + std::to_string(i);
      const json& a = answers[i];
      if (!a.is_object()) fail(ap, "must be an object");
      std::string id = a.contains("id") ? string(a["id"], ap + "/id") : std::to_string(i);
      if (!answer_ids.insert(id).second) fail(ap + "/id", "duplicate answer id '" + id + "'");
      std::string pattern = string(require(a, ap, "pattern"), ap + "/pattern");
      const double frac = fraction(require(a, ap, "fraction"), ap + "/fraction");
      std::string feedback = a.contains("feedback") ? string(a["feedback"], ap + "/feedback") : "";
      if (frac == 1.0) has_full = true;
      q.answers.push_back(build_template(q.id, i, std::move(id), std::move(pattern), frac,
                                         std::move(feedback), options));
    }
    if (!has_full) fail(path + "/answers", "no answer has fraction 1.0");
    return q;
  }

  const json& doc_;
};

}  // namespace

QuestionBank load_bank(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw BankFormatError("/", std::string("invalid JSON: ") + e.what());
  }
  return Reader(doc).read();
}

QuestionBank load_bank_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BankFormatError("/", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_bank(ss.str());
}

}  // namespace linegrade::quiz
