#include <cmath>
#include <random>

#include "doctest.h"
#include "linegrade/quiz/analytics.hpp"
#include "linegrade/quiz/attempt.hpp"
#include "linegrade/quiz/bank.hpp"
#include "linegrade/quiz/grading.hpp"

using namespace linegrade;
using namespace linegrade::quiz;
using hint::HintKind;

namespace {

const QuestionBank& fixture() {
  static const QuestionBank bank = load_bank_file(LINEGRADE_TEST_DIR "/fixtures/bank.json");
  return bank;
}

const Question& q(const char* id) { return *fixture().find(id); }

std::string one_question(const std::string& answers, const std::string& extra = "") {
  return R"({"version":1,"questions":[{"id":"q","prompt":"p","answers":)" + answers + extra + "}]}";
}

}  // namespace

TEST_CASE("fixture bank loads with defaults") {
  const auto& bank = fixture();
  CHECK(bank.questions.size() == 4);
  CHECK(bank.pass_threshold == doctest::Approx(0.6));
  CHECK(q("types").answers[0].id == "0");
  CHECK(q("types").answers[0].metrics.shortest_answer == "float");
  CHECK(q("decl").answers[1].id == "relaxed");
  CHECK(q("sum").mode == Mode::Summative);
  CHECK_FALSE(q("sum").hints.enabled);
  CHECK(q("sum").answers[0].metrics.path_count == 36);
  CHECK(bank.find("nope") == nullptr);
}

TEST_CASE("bank format errors point into the document") {
  auto path_of = [](const std::string& doc) {
    try {
      load_bank(doc);
    } catch (const BankFormatError& e) {
      return e.path();
    }
    return std::string("<none>");
  };
  CHECK(path_of("{") == "/");
  CHECK(path_of(R"({"version":2,"questions":[]})") == "/version");
  CHECK(path_of(one_question(R"([{"pattern":"a","fraction":"1"}])")) == "/questions/0/answers/0/fraction");
  CHECK(path_of(one_question(R"([{"pattern":"a","fraction":0.5}])")).starts_with("/questions/0/answers"));
  CHECK(path_of(one_question(R"([{"pattern":"a","fraction":1.5}])")) == "/questions/0/answers/0/fraction");
  const std::string dup = R"({"version":1,"questions":[
    {"id":"q","prompt":"p","answers":[{"pattern":"a","fraction":1}]},
    {"id":"q","prompt":"p","answers":[{"pattern":"b","fraction":1}]}]})";
  CHECK(path_of(dup) == "/questions/1/id");
}

TEST_CASE("unsupported pattern is reported with question and answer") {
  try {
    load_bank(one_question(R"([{"pattern":"(?=x)y","fraction":1}])"));
    FAIL("expected PatternError");
  } catch (const PatternError& e) {
    CHECK(e.question_id() == "q");
    CHECK(e.answer_index() == 0);
    CHECK(e.cause_kind() == "SyntaxError");
    REQUIRE(e.position());
    CHECK(*e.position() == 0);
    CHECK(e.message().find("look-ahead") != std::string::npos);
  }
}

TEST_CASE("grading examples") {
  auto g = grade_response(q("types"), "float", {});
  CHECK(g.raw_fraction == 1.0);
  CHECK(g.final_fraction == 1.0);
  CHECK(g.matched_answer_id == "0");
  g = grade_response(q("types"), "float", {3, 0});
  CHECK(g.penalty_total == doctest::Approx(0.3));
  CHECK(g.final_fraction == doctest::Approx(0.7));
  g = grade_response(q("decl"), "int x", {});
  CHECK(g.raw_fraction == 0.5);
  CHECK(g.matched_answer_id == "relaxed");
  CHECK(g.feedback == "Missing semicolon.");
  g = grade_response(q("decl"), "int y;", {});
  CHECK(g.raw_fraction == 0.0);
  CHECK_FALSE(g.matched_answer_id);
  CHECK(g.selected_answer == 0);
  CHECK(g.match.matched_prefix_len == 4);
  g = grade_response(q("letter"), "a", {0, 3});
  CHECK(g.final_fraction == 0.0);
  CHECK(g.penalty_total == doctest::Approx(1.5));
}

TEST_CASE("final fraction is raw minus penalty clamped at zero") {
  std::mt19937 rng(7);
  const auto& types = q("types");
  for (int i = 0; i < 500; ++i) {
    const HintCounts h{rng() % 6, rng() % 4};
    const char* texts[] = {"float", "double", "flo", "int", ""};
    const auto g = grade_response(types, texts[rng() % 5], h);
    CHECK(g.final_fraction >= 0.0);
    CHECK(g.final_fraction <= g.raw_fraction);
    CHECK(g.final_fraction == doctest::Approx(std::max(0.0, g.raw_fraction - g.penalty_total)));
    CHECK(g.penalty_total == doctest::Approx(0.1 * h.chars + 0.2 * h.lexemes));
    if (g.raw_fraction == 0.0) CHECK(g.final_fraction == 0.0);
  }
}

TEST_CASE("formative attempt lifecycle with hints") {
  const auto& types = q("types");
  auto a = start_attempt("a1", types);
  CHECK(a.state == AttemptState::Open);
  CHECK(hints_allowed(a, types));
  a = submit(a, types, "fl", 1);
  CHECK(a.state == AttemptState::Open);
  auto [h1, a2] = request_hint(a, types, HintKind::NextChar);
  CHECK(h1.payload == "o");
  CHECK_FALSE(h1.is_final);
  a2 = submit(a2, types, "flo", 2);
  auto [h2, a3] = request_hint(a2, types, HintKind::NextChar);
  CHECK(h2.payload == "a");
  a3 = submit(a3, types, "floa", 3);
  auto [h3, a4] = request_hint(a3, types, HintKind::NextChar);
  CHECK(h3.payload == "t");
  CHECK(h3.is_final);
  CHECK(a4.hints_used == HintCounts{3, 0});
  a4 = submit(a4, types, "float", 4);
  CHECK(a4.state == AttemptState::Completed);
  CHECK(a4.latest()->grade.final_fraction == doctest::Approx(0.7));
  CHECK_THROWS_AS(submit(a4, types, "double", 5), AttemptClosed);
  CHECK_THROWS_AS(request_hint(a4, types, HintKind::NextChar), AttemptClosed);
}

TEST_CASE("hint before any submission targets the empty answer") {
  const auto& types = q("types");
  auto [h, a] = request_hint(start_attempt("a", types), types, HintKind::NextLexeme);
  CHECK(h.payload == "float");
  CHECK(h.is_final);
  CHECK(a.hints_used == HintCounts{0, 1});
}

TEST_CASE("hints target the full-credit template") {
  const auto& decl = q("decl");
  auto a = submit(start_attempt("a", decl), decl, "int x", 1);
  CHECK(a.latest()->grade.raw_fraction == 0.5);
  auto [h, _] = request_hint(a, decl, HintKind::NextChar);
  CHECK(h.payload == ";");
  CHECK(h.is_final);
}

TEST_CASE("summative attempts") {
  const auto& sum = q("sum");
  auto a = start_attempt("s", sum);
  CHECK(a.mode == Mode::Summative);
  CHECK_FALSE(hints_allowed(a, sum));
  CHECK_THROWS_AS(request_hint(a, sum, HintKind::NextChar), HintsDisabled);
  a = submit(a, sum, "x + (5)", 1, fixture().pass_threshold);
  CHECK(a.state == AttemptState::Completed);
  CHECK(a.passed == true);
  auto b = submit(start_attempt("t", sum), sum, "x+", 1, fixture().pass_threshold);
  CHECK(b.state == AttemptState::Completed);
  CHECK(b.passed == false);
  // A formative question taken summatively has no hints either.
  auto c = start_attempt("u", q("types"), Mode::Summative);
  CHECK_THROWS_AS(request_hint(c, q("types"), HintKind::NextChar), HintsDisabled);
}

TEST_CASE("give up closes the attempt") {
  auto a = give_up(start_attempt("g", q("letter")));
  CHECK(a.state == AttemptState::GivenUp);
  CHECK_THROWS_AS(submit(a, q("letter"), "a", 1), AttemptClosed);
  CHECK_THROWS_AS(give_up(a), AttemptClosed);
}

TEST_CASE("whitespace dedupe examples") {
  const std::vector<std::string> log{"int x;", "int  x ;", "intx;", "int\tx;", "float y;"};
  const auto groups = dedupe_whitespace(log);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].key == "intx;");
  CHECK(groups[0].members.size() == 4);
  CHECK(groups[1].members == std::vector<std::string>{"float y;"});
  const auto collapsed = dedupe_whitespace(log, true);
  REQUIRE(collapsed.size() == 4);
  CHECK(collapsed[0].key == "int x;");
  CHECK(collapsed[0].members == std::vector<std::string>{"int x;", "int\tx;"});
  CHECK(whitespace_key("  a \n b  ", true) == "a b");
}

TEST_CASE("dedupe groups exactly the whitespace-equivalent answers") {
  std::mt19937 rng(11);
  const std::string alphabet = "ab \t";
  std::vector<std::string> log;
  for (int i = 0; i < 300; ++i) {
    std::string s(rng() % 6, ' ');
    for (char& c : s) c = alphabet[rng() % alphabet.size()];
    log.push_back(s);
  }
  const auto groups = dedupe_whitespace(log);
  std::size_t total = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    total += groups[i].members.size();
    for (const auto& m : groups[i].members) CHECK(whitespace_key(m) == groups[i].key);
    for (std::size_t j = i + 1; j < groups.size(); ++j) CHECK(groups[i].key != groups[j].key);
  }
  CHECK(total == log.size());
  // Idempotent on the group keys.
  std::vector<std::string> keys;
  for (const auto& g : groups) keys.push_back(g.key);
  CHECK(dedupe_whitespace(keys).size() == groups.size());
}

TEST_CASE("F-measure") {
  CHECK(*f1_score(1.0, 0.88) == doctest::Approx(0.93617).epsilon(1e-4));
  CHECK(*f1_score(1.0, 0.99) == doctest::Approx(0.99497).epsilon(1e-4));
  CHECK_FALSE(f1_score(0, 0));
  for (double p = 0.05; p <= 1.0; p += 0.05)
    for (double r = 0.05; r <= 1.0; r += 0.05) {
      const double f = *f1_score(p, r);
      CHECK(f <= std::max(p, r) + 1e-12);
      CHECK(f >= std::min(p, r) - 1e-12);
    }
}

TEST_CASE("confusion metrics") {
  std::vector<LabeledVerdict> log;
  for (int i = 0; i < 88; ++i) log.push_back({"ok", true, true});
  for (int i = 0; i < 12; ++i) log.push_back({"ok ", true, false});
  for (int i = 0; i < 40; ++i) log.push_back({"bad", false, false});
  const auto m = confusion_metrics(log);
  CHECK(m.true_positive == 88);
  CHECK(m.false_negative == 12);
  CHECK(m.true_negative == 40);
  CHECK(m.false_positive == 0);
  CHECK(*m.precision == 1.0);
  CHECK(*m.recall == doctest::Approx(0.88));
  CHECK(*m.f1 == doctest::Approx(0.9362).epsilon(1e-3));
  const auto perfect = confusion_metrics({{"a", true, true}, {"b", false, false}});
  CHECK(*perfect.f1 == 1.0);
  const auto none = confusion_metrics({{"b", false, false}});
  CHECK_FALSE(none.precision);
  CHECK_FALSE(none.recall);
  CHECK_FALSE(none.f1);
}

TEST_CASE("summary statistics") {
  const auto s = summarize({1, 2});
  CHECK(s.count == 2);
  CHECK(s.mean == 1.5);
  CHECK(s.stdev == 0.5);
  CHECK(summarize({4}).stdev == 0.0);
  CHECK(summarize({}).count == 0);
}

TEST_CASE("mode names") {
  CHECK(std::string(to_string(Mode::Summative)) == "summative");
  CHECK(mode_from_string("formative") == Mode::Formative);
  CHECK(std::string(to_string(AttemptState::GivenUp)) == "given_up");
  CHECK(attempt_state_from_string("open") == AttemptState::Open);
}
