#include "linegrade/hint/hints.hpp"

#include "engine/backtrack.hpp"
#include "engine/nfa.hpp"
#include "engine/program.hpp"
#include "linegrade/errors.hpp"
#include "linegrade/hint/tokenizer.hpp"

namespace linegrade::hint {

using engine::CompiledPattern;
using engine::detail::Backtracker;
using engine::detail::kInf;
using engine::detail::Nfa;
using engine::detail::Op;
using engine::detail::SearchMode;

const char* to_string(HintKind kind) {
  return kind == HintKind::NextChar ? "char" : "lexeme";
}

std::optional<HintKind> hint_kind_from_string(std::string_view s) {
  if (s == "char") return HintKind::NextChar;
  if (s == "lexeme") return HintKind::NextLexeme;
  return std::nullopt;
}

namespace {

// Walks the NFA along states that stay on a shortest path to acceptance,
// picking the lowest-ranked usable character each time.
std::optional<std::string> regular_extension(const CompiledPattern& cp, std::string_view prefix,
                                             std::size_t budget) {
  const auto& prog = cp.program();
  const Nfa nfa(prog);
  auto states = nfa.initial();
  for (char c : prefix) {
    states = nfa.step(states, static_cast<unsigned char>(c));
    if (states.empty()) return std::nullopt;
  }
  int d = nfa.distance(states);
  if (d >= kInf || static_cast<std::size_t>(d) > budget) return std::nullopt;

  std::string out;
  while (d > 0) {
    syntax::CharSet usable;
    for (int pc : states) {
      const auto& in = prog.code[pc];
      if (in.op == Op::Char && prog.min_rest[pc] == d) usable.merge(prog.sets[in.a]);
    }
    const auto c = usable.first_by_rank();
    if (!c) throw CompileError("shortest path lost during completion");
    states = nfa.step_on_shortest(states, *c, d);
    out.push_back(static_cast<char>(*c));
    --d;
  }
  return out;
}

std::optional<std::string> general_extension(const CompiledPattern& cp, std::string_view prefix,
                                             std::size_t budget) {
  const Backtracker bt(cp.program(), cp.options());
  std::string cur(prefix);
  if (!bt.exists(cur, budget)) return std::nullopt;

  std::size_t lo = 0, hi = budget;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (bt.exists(cur, mid))
      hi = mid;
    else
      lo = mid + 1;
  }

  std::string out;
  for (std::size_t rem = lo; rem > 0; --rem) {
    const auto candidates = bt.run(cur, rem, SearchMode::CollectFirst).first;
    bool found = false;
    for (unsigned char c : syntax::generation_order()) {
      if (!candidates.contains(c)) continue;
      cur.push_back(static_cast<char>(c));
      if (bt.exists(cur, rem - 1)) {
        out.push_back(static_cast<char>(c));
        found = true;
        break;
      }
      cur.pop_back();
    }
    if (!found) throw CompileError("shortest completion lost during search");
  }
  return out;
}

}  // namespace

std::optional<std::string> shortest_extension(const CompiledPattern& cp,
                                              std::string_view viable_prefix,
                                              std::size_t budget) {
  if (cp.is_regular() && !cp.options().force_backtracking)
    return regular_extension(cp, viable_prefix, budget);
  return general_extension(cp, viable_prefix, budget);
}

Completion shortest_completion(const CompiledPattern& cp, std::string_view input) {
  const auto m = engine::match_partial(cp, input);
  if (m.verdict == engine::Verdict::NoViablePrefix) throw EmptyLanguage();
  Completion c;
  c.prefix_len = m.matched_prefix_len;
  if (m.verdict == engine::Verdict::Full) return c;
  const std::size_t budget = cp.options().completion_budget;
  auto text = shortest_extension(cp, input.substr(0, c.prefix_len), budget);
  if (!text) throw CompletionBudgetExceeded(budget);
  c.text = std::move(*text);
  return c;
}

Hint make_hint(const Completion& completion, HintKind kind) {
  Hint h;
  h.kind = kind;
  h.prefix_len = completion.prefix_len;
  const std::string& text = completion.text;
  if (text.empty()) {
    h.is_final = true;
    return h;
  }
  if (kind == HintKind::NextChar) {
    h.payload = text.substr(0, 1);
  } else {
    const auto lexemes = lex(text);
    h.payload = lexemes[0].text;
    if (lexemes[0].kind == LexemeKind::Space && lexemes.size() > 1) h.payload += lexemes[1].text;
  }
  h.is_final = h.payload.size() == text.size();
  return h;
}

Hint next_char_hint(const CompiledPattern& cp, std::string_view input) {
  return make_hint(shortest_completion(cp, input), HintKind::NextChar);
}

Hint next_lexeme_hint(const CompiledPattern& cp, std::string_view input) {
  return make_hint(shortest_completion(cp, input), HintKind::NextLexeme);
}

HighlightSpans highlight(const engine::MatchResult& match, const Hint* hint) {
  HighlightSpans spans;
  spans.green = {0, match.matched_prefix_len};
  spans.red = {match.matched_prefix_len, match.input_len};
  if (hint && !hint->payload.empty())
    spans.hint = HintSpan{match.input_len, hint->payload, hint->is_final};
  return spans;
}

HighlightSpans highlight(const CompiledPattern& cp, std::string_view input, const Hint* hint) {
  return highlight(engine::match_partial(cp, input), hint);
}

}  // namespace linegrade::hint
