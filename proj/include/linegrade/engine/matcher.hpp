#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linegrade/syntax/ast.hpp"

namespace linegrade::engine {

namespace detail {
struct Program;
}

struct MatchOptions {
  bool case_sensitive = true;
  std::size_t recursion_limit = 64;
  /// Instructions one backtracking search may execute.
  std::size_t step_budget = 1'000'000;
  /// Longest continuation considered when deciding prefix viability and
  /// computing completions.
  std::size_t completion_budget = 512;
  /// Route regular patterns through the backtracking interpreter too.
  bool force_backtracking = false;
};

enum class Verdict { Full, Partial, NoViablePrefix };

const char* to_string(Verdict v);

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct MatchResult {
  Verdict verdict = Verdict::NoViablePrefix;
  /// Length of the longest prefix of the input that some member of the
  /// language extends. Equals input_len for Full.
  std::size_t matched_prefix_len = 0;
  /// The whole input is a viable prefix but not a member ("keep typing").
  bool prefix_complete = false;
  std::size_t input_len = 0;
  /// Index 0 is the whole match; 1..n are the user's capturing groups.
  /// Empty unless verdict is Full.
  std::vector<std::optional<Span>> captures;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Executable, immutable form of a macro-free AST. Cheap to copy and safe
/// to share between threads.
class CompiledPattern {
 public:
  const detail::Program& program() const { return *program_; }
  std::shared_ptr<const detail::Program> shared_program() const { return program_; }
  const MatchOptions& options() const { return options_; }
  /// Number of user capturing groups.
  int group_count() const;
  std::optional<int> group_index(const std::string& name) const;
  const std::map<std::string, int>& group_names() const { return names_; }
  /// True when the pattern has no backreferences or subroutine calls and
  /// is therefore executed as an NFA.
  bool is_regular() const;
  /// False when the pattern matches no string at all.
  bool language_nonempty() const;

 private:
  friend CompiledPattern compile(const syntax::RegexAst&, MatchOptions);
  std::shared_ptr<const detail::Program> program_;
  MatchOptions options_;
  std::map<std::string, int> names_;
};

/// Throws CompileError when the AST still holds macros.
CompiledPattern compile(const syntax::RegexAst& ast, MatchOptions options = {});

/// Anchored match. Full iff the whole input belongs to the language;
/// otherwise the same result as match_partial.
MatchResult match_full(const CompiledPattern& cp, std::string_view input);

/// Longest viable prefix of the input.
MatchResult match_partial(const CompiledPattern& cp, std::string_view input);

/// Incremental matcher over the NFA of a regular pattern: feed characters
/// one at a time and ask whether the text so far is a member or a viable
/// prefix. Copying a cursor forks it.
class PrefixCursor {
 public:
  bool viable() const { return !states_.empty(); }
  bool accepting() const;
  std::size_t consumed() const { return consumed_; }
  /// Returns viable() after consuming `c`.
  bool feed(unsigned char c);
  /// Minimal number of characters still needed to reach a member.
  std::size_t distance_to_accept() const;
  /// Sorted live NFA states. Cursors with equal states accept exactly the
  /// same continuations.
  const std::vector<int>& states() const { return states_; }

 private:
  friend std::optional<PrefixCursor> make_cursor(const CompiledPattern&);
  std::shared_ptr<const detail::Program> program_;
  std::vector<int> states_;
  std::size_t consumed_ = 0;
};

/// Cursor positioned before the first character; nullopt for patterns that
/// need the backtracking interpreter.
std::optional<PrefixCursor> make_cursor(const CompiledPattern& cp);

}  // namespace linegrade::engine
