// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "httplib.h"
#include "linegrade/cli/csv.hpp"
#include "linegrade/hint/hints.hpp"
#include "linegrade/quiz/analytics.hpp"
#include "linegrade/service/api.hpp"
#include "oracle/derivative.hpp"
#include "oracle/generator.hpp"
#include "test_support.hpp"

using namespace linegrade;
using engine::Verdict;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::string kAlphabet = "ab()";
const std::string kDir = LINEGRADE_TEST_DIR;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- 1. oracle equivalence --------------------------------------------------

// Walks every string of length <= 8 as a trie. The engine side is a prefix
// cursor over the same NFA match_full runs; the oracle side is a Brzozowski
// derivative. Once a (cursor states, derivative) pair has been explored to a
// given remaining depth, its subtree repeats exactly and is skipped.
struct TrieWalk {
  oracle::Derivatives& d;
  std::set<std::tuple<std::vector<int>, int, int>> seen;
  std::uint64_t strings = 0, disagreements = 0;

  void walk(const engine::PrefixCursor& cur, int re, int remaining, std::uint64_t subtree) {
    if (!seen.emplace(cur.states(), re, remaining).second) {
      strings += subtree;  // identical to a subtree already checked
      return;
    }
    ++strings;
    const bool viable = !d.empty_language(re);
    if (cur.accepting() != d.nullable(re) || cur.viable() != viable) ++disagreements;
    if (viable && cur.distance_to_accept() != static_cast<std::size_t>(d.minlen(re))) ++disagreements;
    if (remaining == 0) return;
    const std::uint64_t child = (subtree - 1) / kAlphabet.size();
    for (char c : kAlphabet) {
      auto next = cur;
      next.feed(static_cast<unsigned char>(c));
      walk(next, d.deriv(re, static_cast<unsigned char>(c)), remaining - 1, child);
    }
  }
};

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int kPatterns = 10000, kMaxLen = 8;
  std::uint64_t subtree = 0;  // strings of length <= 8 over 4 letters
  for (int i = 0, p = 1; i <= kMaxLen; ++i, p *= 4) subtree += p;

  std::set<std::string> distinct;
  std::uint64_t strings = 0, bad = 0, direct = 0, direct_bad = 0;
  std::mt19937_64 pick(2026);
  for (std::uint64_t seed = 1; distinct.size() < kPatterns; ++seed) {
    oracle::Derivatives d;
    oracle::PatternGenerator gen(d, seed);
    const auto g = gen.next(4);
    if (!distinct.insert(g.pattern).second) continue;
    const auto cp = testing::compile_pattern(g.pattern);
    auto cursor = engine::make_cursor(cp);
    if (!cursor) return {false, "no prefix cursor for regular pattern " + g.pattern};
    TrieWalk walk{d};
    walk.walk(*cursor, g.re, kMaxLen, subtree);
    strings += walk.strings;
    bad += walk.disagreements;
    // match_full itself, on every string up to length 3 and a sample of
    // longer ones.
    auto check = [&](const std::string& s) {
      ++direct;
      if ((engine::match_full(cp, s).verdict == Verdict::Full) != d.member(g.re, s)) ++direct_bad;
    };
    testing::for_each_string(kAlphabet, 3, check);
    for (int k = 0; k < 20; ++k) {
      std::string s(4 + pick() % 5, 'a');
      for (char& c : s) c = kAlphabet[pick() % 4];
      check(s);
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << distinct.size() << " patterns, " << strings << " (pattern, string) cases by trie walk, "
     << bad << " disagreements; " << direct << " direct match_full checks, " << direct_bad
     << " disagreements; " << std::fixed << std::setprecision(1) << secs << " s";
  return {bad == 0 && direct_bad == 0 && strings == subtree * kPatterns && secs <= 300, os.str()};
}

// ---- 2. partial-match maximality -------------------------------------------

Outcome partial_maximality() {
  constexpr int kPairs = 10000;
  oracle::Derivatives d;
  oracle::PatternGenerator gen(d, 77);
  int ok = 0, general = 0;
  for (int i = 0; i < kPairs; ++i) {
    const auto g = gen.next(4);
    const std::string s = gen.random_string(10);
    // Alternate the two execution strategies.
    const bool bt = i % 2 == 1;
    general += bt;
    const auto cp = testing::compile_pattern(g.pattern, bt ? testing::backtracking() : engine::MatchOptions{});
    const auto r = engine::match_partial(cp, s);
    const std::size_t k = r.matched_prefix_len;
    const bool viable_k = d.viable(g.re, s.substr(0, k));
    const bool viable_next = k < s.size() && d.viable(g.re, s.substr(0, k + 1));
    const bool verdict_ok = d.empty_language(g.re) ? r.verdict == Verdict::NoViablePrefix
                                                    : (r.verdict == Verdict::Full) == d.member(g.re, s);
    ok += (viable_k || d.empty_language(g.re)) && !viable_next && verdict_ok;
  }
  std::ostringstream os;
  os << ok << "/" << kPairs << " pairs satisfy viable(k) and not viable(k+1) (" << general
     << " through the backtracking interpreter)";
  return {ok == kPairs, os.str()};
}

// ---- 3. completion minimality ----------------------------------------------

// Length of the shortest suffix over `letters` completing `prefix`, by
// exhaustive search up to `limit` characters; -1 if none.
int brute_force_min(oracle::Derivatives& d, int re, const std::string& prefix, const std::string& letters,
                    int limit) {
  const int start = d.deriv(re, prefix);
  std::vector<int> level{start};
  for (int len = 0; len <= limit; ++len) {
    for (int r : level)
      if (d.nullable(r)) return len;
    std::vector<int> next;
    for (int r : level)
      for (char c : letters) next.push_back(d.deriv(r, static_cast<unsigned char>(c)));
    // Suffixes reaching the same derivative are interchangeable.
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  return -1;
}

Outcome completion_minimality() {
  constexpr int kCases = 2000;
  const std::string letters = "ab() ";
  oracle::Derivatives d;
  oracle::PatternGenerator gen(d, 31337);
  int ok = 0, ties = 0;
  for (int i = 0; i < kCases; ++i) {
    const auto g = gen.next(4);
    const auto cp = testing::compile_pattern(g.pattern);
    const std::string s = gen.random_string(8);
    try {
      const auto c = hint::shortest_completion(cp, s);
      const std::string kept = s.substr(0, c.prefix_len);
      const int n = static_cast<int>(c.text.size());
      const int brute = brute_force_min(d, g.re, kept, letters, n + 2);
      std::string smallest;
      const bool tie_ok = oracle::smallest_shortest_completion(d, g.re, kept, smallest) && smallest == c.text;
      ties += tie_ok;
      ok += brute == n && d.member(g.re, kept + c.text) && tie_ok;
    } catch (const EmptyLanguage&) {
      ok += d.empty_language(g.re);
    }
  }
  std::ostringstream os;
  os << ok << "/" << kCases << " completions have brute-force minimal length (search to min+2), " << ties
     << " equal the smallest shortest completion";
  return {ok == kCases, os.str()};
}

// ---- 4. hint-chain convergence ---------------------------------------------

Outcome hint_chain() {
  constexpr int kCases = 1000;
  oracle::Derivatives d;
  oracle::PatternGenerator gen(d, 4711);
  int ok = 0, macro = 0;
  for (int i = 0; i < kCases; ++i) {
    const auto g = gen.next(4);
    const bool wrap = i % 4 == 0;
    macro += wrap;
    const std::string pattern = wrap ? "(?###parens_opt<)" + g.pattern + "(?###>)" : g.pattern;
    const auto cp = testing::compile_pattern(pattern);
    if (!cp.language_nonempty()) {
      ok += d.empty_language(g.re);
      continue;
    }
    std::string cur = gen.random_string(6);
    const auto first = hint::shortest_completion(cp, cur);
    cur.resize(first.prefix_len);
    std::size_t steps = 0;
    bool good = true;
    while (good && !testing::full(cp, cur)) {
      const auto h = hint::next_char_hint(cp, cur);
      good = h.payload.size() == 1 && h.prefix_len == cur.size() && steps < first.text.size();
      cur += h.payload;
      ++steps;
      good = good && h.is_final == testing::full(cp, cur);
    }
    ok += good && steps == first.text.size();
  }
  std::ostringstream os;
  os << ok << "/" << kCases << " chains reach Full in exactly the initial completion length (" << macro
     << " with a parens_opt macro)";
  return {ok == kCases, os.str()};
}

// ---- 5. parentheses robustness ---------------------------------------------

struct Expr {
  std::string op;  // empty for a leaf
  std::string leaf;
  std::unique_ptr<Expr> l, r;
};

int precedence(const std::string& op) { return op == "+" || op == "-" ? 1 : 2; }

std::unique_ptr<Expr> random_expr(std::mt19937_64& rng, int depth) {
  auto e = std::make_unique<Expr>();
  if (depth == 0 || rng() % 3 == 0) {
    static const char* leaves[] = {"x", "y", "n", "total", "i", "2", "10", "42"};
    e->leaf = leaves[rng() % 8];
    return e;
  }
  static const char* ops[] = {"+", "-", "*", "/", "%"};
  e->op = ops[rng() % 5];
  e->l = random_expr(rng, depth - 1);
  e->r = random_expr(rng, depth - 1);
  return e;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::string("+*()").find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

bool needs_parens(const Expr& parent, const Expr& child, bool right) {
  if (child.op.empty()) return false;
  const int pc = precedence(child.op), pp = precedence(parent.op);
  return pc < pp || (right && pc == pp);
}

// Canonical answer text (minimal parentheses) with the [start, end) range
// of every subexpression, the teacher's macro-free template for it, and the
// template with a parens_opt macro around every subexpression.
struct Rendered {
  std::string text, plain, macro;
};

Rendered render(const Expr& e, std::size_t at, std::vector<std::pair<std::size_t, std::size_t>>& spans) {
  if (e.op.empty()) {
    spans.emplace_back(at, at + e.leaf.size());
    const auto lit = escape(e.leaf);
    return {e.leaf, lit, "(?###parens_opt<)" + lit + "(?###>)"};
  }
  Rendered out;
  auto side = [&](const Expr& child, bool right) {
    const bool p = needs_parens(e, child, right);
    if (p) out.text += "(";
    const Rendered c = render(child, at + out.text.size(), spans);
    out.text += c.text;
    if (p) out.text += ")";
    out.plain += p ? "\\(\\s*" + c.plain + "\\s*\\)" : c.plain;
    out.macro += c.macro;
  };
  side(*e.l, false);
  out.text += " " + e.op + " ";
  out.plain += "\\s*" + escape(e.op) + "\\s*";
  out.macro += "\\s*" + escape(e.op) + "\\s*";
  side(*e.r, true);
  out.macro = "(?###parens_opt<)" + out.macro + "(?###>)";
  spans.emplace_back(at, at + out.text.size());
  return out;
}

Outcome parens_robustness() {
  constexpr int kAnswers = 500;
  std::mt19937_64 rng(99);
  int macro_base = 0, macro_wrapped = 0, plain_base = 0, plain_wrapped_rejected = 0;
  for (int i = 0; i < kAnswers; ++i) {
    const auto e = random_expr(rng, 3);
    std::vector<std::pair<std::size_t, std::size_t>> subs;
    const Rendered r = render(*e, 0, subs);
    const auto [s, t] = subs[rng() % subs.size()];
    const int layers = 1 + static_cast<int>(rng() % 3);
    std::string open, close;
    for (int k = 0; k < layers; ++k) {
      open += rng() % 2 ? "( " : "(";
      close += rng() % 2 ? " )" : ")";
    }
    const std::string wrapped = r.text.substr(0, s) + open + r.text.substr(s, t - s) + close + r.text.substr(t);
    const auto plain = testing::compile_pattern(r.plain);
    const auto macro = testing::compile_pattern(r.macro);
    macro_base += testing::full(macro, r.text);
    macro_wrapped += testing::full(macro, wrapped);
    plain_base += testing::full(plain, r.text);
    plain_wrapped_rejected += !testing::full(plain, wrapped);
  }
  std::ostringstream os;
  os << "macro template accepts " << macro_wrapped << "/" << kAnswers << " wrapped and " << macro_base << "/"
     << kAnswers << " canonical answers; macro-free template accepts " << plain_base << "/" << kAnswers
     << " canonical and rejects " << plain_wrapped_rejected << "/" << kAnswers << " wrapped";
  return {macro_wrapped == kAnswers && macro_base == kAnswers && plain_base == kAnswers &&
              plain_wrapped_rejected == kAnswers,
          os.str()};
}

// ---- 6. F-measure ----------------------------------------------------------

// 100 answers a human marked correct, `accepted` of them accepted by the
// engine, and 40 incorrect answers all rejected.
std::vector<quiz::LabeledVerdict> synthetic_log(int accepted) {
  std::vector<quiz::LabeledVerdict> log;
  for (int i = 0; i < 100; ++i) log.push_back({"c" + std::to_string(i), true, i < accepted});
  for (int i = 0; i < 40; ++i) log.push_back({"w" + std::to_string(i), false, false});
  return log;
}

Outcome f_measure() {
  const auto before = quiz::confusion_metrics(synthetic_log(88));
  const auto after = quiz::confusion_metrics(synthetic_log(99));
  // Independent arithmetic: F1 = 2PR / (P + R).
  const double f_before = 2 * 1.0 * 0.88 / 1.88, f_after = 2 * 1.0 * 0.99 / 1.99;
  const bool ok = before.precision == 1.0 && after.precision == 1.0 && before.f1 && after.f1 &&
                  std::abs(*before.recall - 0.88) < 1e-12 && std::abs(*after.recall - 0.99) < 1e-12 &&
                  std::abs(*before.f1 - 0.936) <= 0.001 && std::abs(*after.f1 - 0.995) <= 0.001 &&
                  std::abs(*before.f1 - f_before) < 1e-12 && std::abs(*after.f1 - f_after) < 1e-12;
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << "(P=1.0, R=0.88) -> F1 " << before.f1.value_or(-1)
     << "; (P=1.0, R=0.99) -> F1 " << after.f1.value_or(-1);
  return {ok, os.str()};
}

// ---- 7. whitespace dedupe --------------------------------------------------

Outcome whitespace_dedupe() {
  // 30 answers with distinct non-whitespace content, then 20 that repeat
  // answers 0..4 with different spacing (4 variants each).
  std::vector<std::string> log;
  for (int i = 0; i < 30; ++i) log.push_back("int v" + std::to_string(i) + " = " + std::to_string(i) + ";");
  const char* spacing[] = {"int  v{} = {};", "int v{}={};", "int\tv{} =  {} ;", " int v{} = {};\n"};
  for (int i = 0; i < 5; ++i)
    for (const char* f : spacing) {
      std::string s(f);
      for (std::size_t at; (at = s.find("{}")) != std::string::npos;) s.replace(at, 2, std::to_string(i));
      log.push_back(s);
    }
  const std::size_t expected = 30;  // counted by hand: 30 distinct answers, the rest are respacings
  const auto groups = quiz::dedupe_whitespace(log);
  std::vector<std::string> keys, representatives;
  for (const auto& g : groups) {
    keys.push_back(g.key);
    representatives.push_back(g.members.front());
  }
  const auto again = quiz::dedupe_whitespace(keys);
  const auto reps = quiz::dedupe_whitespace(representatives);
  bool same_keys = again.size() == groups.size();
  for (std::size_t i = 0; same_keys && i < again.size(); ++i) same_keys = again[i].key == groups[i].key;
  std::size_t members = 0;
  for (const auto& g : groups) members += g.members.size();
  std::ostringstream os;
  os << log.size() << " answers -> " << groups.size() << " groups (expected " << expected
     << "); regrouping keys gives " << again.size() << ", regrouping representatives gives " << reps.size();
  return {log.size() == 50 && groups.size() == expected && same_keys && reps.size() == expected &&
              members == log.size() && groups[0].members.size() == 5,
          os.str()};
}

// ---- 8. end-to-end CLI -----------------------------------------------------

struct Proc {
  int code = -1;
  std::string out;
};

Proc run_binary(const std::vector<std::string>& args) {
  std::string cmd = "'" + std::string(LINEGRADE_BINARY) + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>&1";
  Proc p;
  FILE* f = ::popen(cmd.c_str(), "r");
  if (!f) return p;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, f)) > 0;) p.out.append(buf, n);
  const int status = ::pclose(f);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

std::string golden(const std::string& name) { return read_file(kDir + "/golden/" + name); }

// Starts `serve` on a free port, returns the JSON of GET /api/questions.
std::string serve_questions(std::string& listening_line) {
  int pipefd[2];
  if (::pipe(pipefd) != 0) return "";
  const pid_t pid = ::fork();
  if (pid == 0) {
    ::dup2(pipefd[1], STDOUT_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    const std::string bank = kDir + "/fixtures/bank.json";
    ::execl(LINEGRADE_BINARY, LINEGRADE_BINARY, "serve", "--bank", bank.c_str(), "--port", "0",
            static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(pipefd[1]);
  std::string line;
  char c;
  while (::read(pipefd[0], &c, 1) == 1 && c != '\n') line += c;
  listening_line = line;
  std::string body;
  const auto colon = line.rfind(':');
  if (colon != std::string::npos) {
    httplib::Client client("127.0.0.1", std::atoi(line.c_str() + colon + 1));
    if (auto res = client.Get("/api/questions"); res && res->status == 200) body = res->body;
    if (auto res = client.Get("/"); !res || res->status != 200) body.clear();
  }
  ::kill(pid, SIGTERM);
  int status = 0;
  ::waitpid(pid, &status, 0);
  ::close(pipefd[0]);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return "";
  return body;
}

Outcome cli_end_to_end() {
  std::vector<std::string> failures;
  const std::string bank = kDir + "/fixtures/bank.json";
  auto expect = [&](const char* name, const Proc& p, int code, const std::string& want) {
    if (p.code != code || p.out != want) failures.push_back(name);
  };
  expect("test", run_binary({"test", "-e", "float|double", "-f", kDir + "/fixtures/answers.txt", "--hints"}), 1,
         golden("test.txt"));
  expect("test-error", run_binary({"test", "-e", "int\\s+(x", "-f", kDir + "/fixtures/answers.txt"}), 2,
         golden("test_error.txt"));
  expect("analyze", run_binary({"analyze", "--bank", bank}), 0, golden("analyze.txt"));
  expect("grade", run_binary({"grade", "--bank", bank, "--responses", kDir + "/fixtures/responses.csv", "--metrics"}),
         0, golden("grade.txt"));

  std::string listening;
  const std::string served = serve_questions(listening);
  if (served.empty() || service::json::parse(served) != service::json::parse(golden("serve_questions.json")) ||
      !listening.starts_with("listening on http://127.0.0.1:"))
    failures.push_back("serve");

  // The CLI and the HTTP handlers grade every response identically.
  const auto grade = run_binary({"grade", "--bank", bank, "--responses", kDir + "/fixtures/responses.csv"});
  auto rows = cli::parse_csv(grade.out);
  rows.erase(rows.begin());
  auto qbank = std::make_shared<const quiz::QuestionBank>(quiz::load_bank_file(bank));
  service::Api api(std::make_shared<service::SessionStore>(qbank));
  const auto inputs = cli::parse_csv(read_file(kDir + "/fixtures/responses.csv"));
  std::size_t identical = 0, compared = 0;
  for (std::size_t i = 1; i < inputs.size() && i - 1 < rows.size(); ++i) {
    const auto& in = inputs[i].fields;
    const auto& out = rows[i - 1].fields;
    ++compared;
    const auto created = api.create_attempt(service::json{{"question_id", in[0]}}.dump());
    const auto r = api.submit_answer(created.body["attempt_id"], service::json{{"text", in[1]}}.dump());
    const auto& g = r.body["grade"];
    const std::string matched = g["matched_answer_id"].is_null() ? "" : g["matched_answer_id"].get<std::string>();
    const bool same = out[2] == in[1] && std::stod(out[5]) == g["raw_fraction"].get<double>() &&
                      std::stod(out[6]) == g["final_fraction"].get<double>() && out[7] == matched &&
                      std::stoul(out[4]) == g["match"]["matched_prefix_len"].get<std::size_t>() &&
                      out[3] == (g["raw_fraction"].get<double>() >= 1.0 ? "correct" : "incorrect");
    identical += same;
  }
  if (compared != 30 || identical != 30) failures.push_back("cli-api identity");

  std::ostringstream os;
  os << "golden runs test, test-error, analyze, grade, serve; CLI vs API identical on " << identical << "/"
     << compared << " responses";
  if (!failures.empty()) {
    os << "; failed:";
    for (const auto& f : failures) os << " " << f;
  }
  return {failures.empty(), os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"partial-match maximality", partial_maximality},
      {"completion minimality", completion_minimality},
      {"hint-chain convergence", hint_chain},
      {"parentheses robustness", parens_robustness},
      {"F-measure arithmetic", f_measure},
      {"whitespace dedupe", whitespace_dedupe},
      {"end-to-end CLI", cli_end_to_end},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
