#include "linegrade/engine/matcher.hpp"

#include <algorithm>

#include "engine/backtrack.hpp"
#include "engine/nfa.hpp"
#include "engine/program.hpp"
#include "linegrade/errors.hpp"
#include "linegrade/syntax/ast.hpp"

namespace linegrade::engine {

using detail::Backtracker;
using detail::kInf;
using detail::Nfa;
using detail::SearchMode;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Full: return "Full";
    case Verdict::Partial: return "Partial";
    case Verdict::NoViablePrefix: return "NoViablePrefix";
  }
  return "?";
}

int CompiledPattern::group_count() const { return program_->user_groups; }

std::optional<int> CompiledPattern::group_index(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

bool CompiledPattern::is_regular() const { return program_->regular(); }

bool CompiledPattern::language_nonempty() const {
  return program_->min_rest[program_->start] < kInf;
}

CompiledPattern compile(const syntax::RegexAst& ast, MatchOptions options) {
  if (syntax::contains_macros(*ast.root))
    throw CompileError("pattern contains unexpanded macros; run expand_macros first");
  CompiledPattern cp;
  cp.program_ = std::make_shared<const detail::Program>(detail::build_program(ast, options));
  cp.options_ = options;
  cp.names_ = ast.group_names;
  return cp;
}

namespace {

bool use_nfa(const CompiledPattern& cp) {
  return cp.is_regular() && !cp.options().force_backtracking;
}

std::vector<std::optional<Span>> captures_from(const CompiledPattern& cp,
                                               const std::vector<int>& slots, std::size_t len) {
  std::vector<std::optional<Span>> caps(static_cast<std::size_t>(cp.group_count()) + 1);
  caps[0] = Span{0, len};
  for (int g = 1; g <= cp.group_count(); ++g) {
    const int s = slots[2 * g], e = slots[2 * g + 1];
    if (s >= 0 && e >= s)
      caps[g] = Span{static_cast<std::size_t>(s), static_cast<std::size_t>(e)};
  }
  return caps;
}

MatchResult full_result(const CompiledPattern& cp, std::string_view input,
                        const std::vector<int>& slots) {
  MatchResult r;
  r.verdict = Verdict::Full;
  r.input_len = input.size();
  r.matched_prefix_len = input.size();
  r.captures = captures_from(cp, slots, input.size());
  return r;
}

MatchResult partial_result(std::string_view input, std::size_t kept) {
  MatchResult r;
  r.verdict = Verdict::Partial;
  r.input_len = input.size();
  r.matched_prefix_len = kept;
  r.prefix_complete = kept == input.size();
  return r;
}

MatchResult empty_language_result(std::string_view input) {
  MatchResult r;
  r.verdict = Verdict::NoViablePrefix;
  r.input_len = input.size();
  return r;
}

MatchResult match_regular(const CompiledPattern& cp, std::string_view input) {
  const Nfa nfa(cp.program());
  std::vector<int> states = nfa.initial();
  std::size_t kept = 0;
  for (; kept < input.size(); ++kept) {
    auto next = nfa.step(states, static_cast<unsigned char>(input[kept]));
    if (next.empty()) break;
    states = std::move(next);
  }
  if (kept == input.size() && nfa.accepting(states)) {
    std::vector<int> slots;
    if (cp.group_count() > 0) {
      // Capture positions follow backtracking priority; the memoized
      // interpreter is polynomial on regular programs.
      auto found = Backtracker(cp.program(), cp.options()).run(input, 0, SearchMode::Exists);
      if (!found.success) throw CompileError("NFA and interpreter disagree on a regular pattern");
      slots = std::move(found.slots);
    }
    return full_result(cp, input, slots);
  }
  return partial_result(input, kept);
}

MatchResult match_general(const CompiledPattern& cp, std::string_view input) {
  const Backtracker bt(cp.program(), cp.options());
  auto full = bt.run(input, 0, SearchMode::Exists);
  if (full.success) return full_result(cp, input, full.slots);

  const std::size_t budget = cp.options().completion_budget;
  const std::size_t reach = bt.run(input, budget, SearchMode::MaxReach).reach;
  for (std::size_t k = reach + 1; k-- > 0;) {
    if (bt.exists(input.substr(0, k), budget)) return partial_result(input, k);
  }
  return empty_language_result(input);
}

}  // namespace

MatchResult match_full(const CompiledPattern& cp, std::string_view input) {
  if (!cp.language_nonempty()) return empty_language_result(input);
  return use_nfa(cp) ? match_regular(cp, input) : match_general(cp, input);
}

MatchResult match_partial(const CompiledPattern& cp, std::string_view input) {
  return match_full(cp, input);
}

bool PrefixCursor::accepting() const { return Nfa(*program_).accepting(states_); }

bool PrefixCursor::feed(unsigned char c) {
  states_ = Nfa(*program_).step(states_, c);
  std::sort(states_.begin(), states_.end());
  ++consumed_;
  return viable();
}

std::size_t PrefixCursor::distance_to_accept() const {
  return static_cast<std::size_t>(Nfa(*program_).distance(states_));
}

std::optional<PrefixCursor> make_cursor(const CompiledPattern& cp) {
  if (!cp.is_regular()) return std::nullopt;
  PrefixCursor cursor;
  cursor.program_ = cp.shared_program();
  cursor.states_ = Nfa(*cursor.program_).initial();
  std::sort(cursor.states_.begin(), cursor.states_.end());
  return cursor;
}

}  // namespace linegrade::engine
