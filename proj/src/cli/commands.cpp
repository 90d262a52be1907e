#include "linegrade/cli/commands.hpp"

#include <unistd.h>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "linegrade/cli/csv.hpp"
#include "linegrade/hint/hints.hpp"
#include "linegrade/quiz/analytics.hpp"
#include "linegrade/quiz/bank.hpp"
#include "linegrade/quiz/grading.hpp"
#include "linegrade/service/api.hpp"
#include "linegrade/syntax/macros.hpp"
#include "linegrade/syntax/parser.hpp"

#ifndef LINEGRADE_DEFAULT_STATIC_DIR
#define LINEGRADE_DEFAULT_STATIC_DIR ""
#endif

namespace linegrade::cli {

namespace {

constexpr const char* kGreen = "\x1b[32m";
constexpr const char* kRed = "\x1b[31m";
constexpr const char* kYellow = "\x1b[33m";
constexpr const char* kReset = "\x1b[0m";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    lines.push_back(std::move(cur));
  }
  return lines;
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

std::string fraction_text(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

// ---- test ---------------------------------------------------------------

struct TestArgs {
  std::string pattern;
  std::string pattern_file;
  std::string answers_file;
  bool hints = false;
  bool no_color = false;
};

void print_syntax_error(std::ostream& err, const std::string& pattern, const Error& e) {
  std::optional<std::size_t> offset;
  std::string message = e.what();
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    offset = s->position();
    message = s->message();
  } else if (const auto* m = dynamic_cast<const MacroError*>(&e)) {
    offset = m->position();
  }
  err << "error: " << e.kind();
  if (offset) err << " at offset " << *offset;
  err << ": " << message << "\n";
  if (offset) err << "  " << pattern << "\n  " << std::string(*offset, ' ') << "^\n";
}

int cmd_test(const TestArgs& a, std::ostream& out, std::ostream& err, bool color) {
  std::string pattern = a.pattern;
  if (!a.pattern_file.empty()) {
    pattern = read_file(a.pattern_file);
    while (!pattern.empty() && (pattern.back() == '\n' || pattern.back() == '\r')) pattern.pop_back();
  }
  engine::CompiledPattern cp;
  try {
    cp = engine::compile(syntax::expand_macros(syntax::parse(pattern)));
  } catch (const Error& e) {
    print_syntax_error(err, pattern, e);
    return 2;
  }
  const auto answers = split_lines(read_file(a.answers_file));
  bool all_full = true;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    const std::string& s = answers[i];
    engine::MatchResult m;
    try {
      m = engine::match_full(cp, s);
    } catch (const Error& e) {
      out << i + 1 << ": ERROR    " << s << "  (" << e.kind() << ": " << e.what() << ")\n";
      all_full = false;
      continue;
    }
    const bool full = m.verdict == engine::Verdict::Full;
    all_full = all_full && full;
    const std::string label = full ? "FULL   " : (m.prefix_complete ? "PREFIX " : "PARTIAL");
    const std::string green = s.substr(0, m.matched_prefix_len);
    const std::string red = s.substr(m.matched_prefix_len);
    out << i + 1 << ": " << label << "  ";
    if (color) {
      out << kGreen << green << kReset << kRed << red << kReset;
    } else {
      out << green;
      if (!red.empty()) out << "[" << red << "]";
    }
    if (!full) out << "  (" << m.matched_prefix_len << "/" << m.input_len << ")";
    out << "\n";
    if (a.hints && !full) {
      try {
        const auto c = hint::shortest_completion(cp, s);
        out << "   completion: " << green;
        if (color)
          out << kYellow << c.text << kReset;
        else
          out << "{" << c.text << "}";
        out << "  (+" << c.text.size() << ")\n";
      } catch (const Error& e) {
        out << "   completion: none (" << e.kind() << ")\n";
      }
    }
  }
  return all_full ? 0 : 1;
}

// ---- analyze --------------------------------------------------------------

int cmd_analyze(const std::string& bank_path, std::ostream& out) {
  const auto bank = quiz::load_bank_file(bank_path);
  std::vector<double> chars, tokens, paths, per_question;
  out << "question\tanswer\tchars\ttokens\tpaths\trecursion\tbackrefs\tshortest\n";
  for (const auto& q : bank.questions) {
    per_question.push_back(static_cast<double>(q.answers.size()));
    for (const auto& t : q.answers) {
      const auto& m = t.metrics;
      chars.push_back(static_cast<double>(m.shortest_answer_chars));
      tokens.push_back(static_cast<double>(m.shortest_answer_tokens));
      paths.push_back(static_cast<double>(m.path_count));
      out << q.id << "\t" << t.id << "\t" << m.shortest_answer_chars << "\t"
          << m.shortest_answer_tokens << "\t" << m.path_count << "\t"
          << (m.uses_recursion ? "yes" : "no") << "\t" << (m.uses_backreferences ? "yes" : "no")
          << "\t" << service::json(m.shortest_answer).dump() << "\n";
    }
  }
  out << "\nanswers per question\n";
  for (const auto& q : bank.questions) out << q.id << "\t" << q.answers.size() << "\n";

  out << "\nmeasure\tmin\tmax\tmean\tstdev\n";
  const auto row = [&](const char* name, const std::vector<double>& v) {
    const auto s = quiz::summarize(v);
    out << name << "\t" << fixed(s.min, 0) << "\t" << fixed(s.max, 0) << "\t" << fixed(s.mean, 2)
        << "\t" << fixed(s.stdev, 2) << "\n";
  };
  row("characters in answer", chars);
  row("tokens in answer", tokens);
  row("paths through the expression", paths);
  row("expressions per question", per_question);
  return 0;
}

// ---- grade ----------------------------------------------------------------

int cmd_grade(const std::string& bank_path, const std::string& responses_path, bool metrics,
              std::ostream& out, std::ostream& err) {
  const auto bank = quiz::load_bank_file(bank_path);
  auto rows = parse_csv(read_file(responses_path));
  if (!rows.empty() && !rows[0].fields.empty() && rows[0].fields[0] == "question_id")
    rows.erase(rows.begin());

  struct Graded {
    std::size_t row;
    std::string qid, text, label;
    quiz::GradeResult grade;
  };
  std::vector<Graded> graded;
  for (const auto& r : rows) {
    if (r.fields.size() < 2 || r.fields.size() > 3) {
      err << "error: row " << r.number << ": expected question_id,text[,label]\n";
      return 2;
    }
    const std::string label = r.fields.size() == 3 ? r.fields[2] : "";
    if (!label.empty() && label != "correct" && label != "incorrect") {
      err << "error: row " << r.number << ": label must be correct, incorrect or empty\n";
      return 2;
    }
    const auto* q = bank.find(r.fields[0]);
    if (!q) {
      err << "error: row " << r.number << ": unknown question id '" << r.fields[0] << "'\n";
      return 2;
    }
    graded.push_back({r.number, r.fields[0], r.fields[1], label, quiz::grade_response(*q, r.fields[1])});
  }

  out << "row,question_id,text,verdict,matched_prefix_len,raw_fraction,final_fraction,"
         "matched_answer_id,label\n";
  std::vector<quiz::LabeledVerdict> log;
  for (const auto& g : graded) {
    out << g.row << "," << csv_escape(g.qid) << "," << csv_escape(g.text) << ","
        << (g.grade.raw_fraction >= 1.0 ? "correct" : "incorrect") << ","
        << g.grade.match.matched_prefix_len << "," << fraction_text(g.grade.raw_fraction) << ","
        << fraction_text(g.grade.final_fraction) << ","
        << csv_escape(g.grade.matched_answer_id.value_or("")) << "," << g.label << "\n";
    if (!g.label.empty())
      log.push_back({g.text, g.label == "correct", g.grade.raw_fraction >= 1.0});
  }
  if (metrics) {
    const auto m = quiz::confusion_metrics(log);
    const auto show = [](const std::optional<double>& v) { return v ? fixed(*v) : std::string("undefined"); };
    out << "# labeled " << log.size() << " tp " << m.true_positive << " fp " << m.false_positive
        << " tn " << m.true_negative << " fn " << m.false_negative << "\n";
    out << "# precision " << show(m.precision) << "\n";
    out << "# recall " << show(m.recall) << "\n";
    out << "# f1 " << show(m.f1) << "\n";
  }
  return 0;
}

// ---- serve ----------------------------------------------------------------

std::atomic<service::HttpServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

int cmd_serve(const std::string& bank_path, std::optional<int> port, const std::string& store,
              const std::string& static_dir, std::ostream& out, std::ostream& err) {
  auto bank = std::make_shared<const quiz::QuestionBank>(quiz::load_bank_file(bank_path));
  auto sessions = std::make_shared<service::SessionStore>(bank, store);
  auto api = std::make_shared<service::Api>(sessions);
  service::ServerConfig config;
  config.port = service::resolve_port(port);
  config.static_dir = static_dir;
  service::HttpServer server(api, config);
  if (!server.bind()) {
    err << "error: cannot listen on port " << config.port << "\n";
    return 2;
  }
  out << "listening on http://" << config.host << ":" << server.port() << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Template grading for one-line code answers", "linegrade"};
  app.require_subcommand(1);

  TestArgs test;
  auto* test_cmd = app.add_subcommand("test", "Match answers against a pattern");
  auto* e_opt = test_cmd->add_option("-e,--pattern", test.pattern, "Pattern");
  auto* pf_opt = test_cmd->add_option("--pattern-file", test.pattern_file, "File holding the pattern");
  e_opt->excludes(pf_opt);
  test_cmd->add_option("-f,--answers", test.answers_file, "Answers, one per line ('-' for stdin)")
      ->required();
  test_cmd->add_flag("--hints", test.hints, "Show the minimal completion of each partial answer");
  test_cmd->add_flag("--no-color", test.no_color, "Disable terminal colors");

  std::string bank;
  auto* analyze_cmd = app.add_subcommand("analyze", "Pattern metrics of a question bank");
  analyze_cmd->add_option("--bank", bank, "Question bank file")->required();

  std::string responses;
  bool metrics = false;
  auto* grade_cmd = app.add_subcommand("grade", "Grade a CSV of responses");
  grade_cmd->add_option("--bank", bank, "Question bank file")->required();
  grade_cmd->add_option("--responses", responses, "CSV: question_id,text[,label]")->required();
  grade_cmd->add_flag("--metrics", metrics, "Print precision, recall and F1 for labeled rows");

  std::optional<int> port;
  std::string store, static_dir = LINEGRADE_DEFAULT_STATIC_DIR;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--bank", bank, "Question bank file")->required();
  serve_cmd->add_option("--port", port, "Port (default $PREG_PORT or 8750)");
  serve_cmd->add_option("--store", store, "Event log file");
  serve_cmd->add_option("--static", static_dir, "Directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*test_cmd) {
      if (test.pattern.empty() && test.pattern_file.empty() && e_opt->count() == 0) {
        err << "error: one of -e or --pattern-file is required\n";
        return 2;
      }
      const bool color = !test.no_color && &out == &std::cout && ::isatty(STDOUT_FILENO);
      return cmd_test(test, out, err, color);
    }
    if (*analyze_cmd) return cmd_analyze(bank, out);
    if (*grade_cmd) return cmd_grade(bank, responses, metrics, out, err);
    if (*serve_cmd) return cmd_serve(bank, port, store, static_dir, out, err);
  } catch (const CsvError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace linegrade::cli
