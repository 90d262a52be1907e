#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "linegrade/engine/matcher.hpp"

namespace linegrade::hint {

/// Characters to append to the kept viable prefix of an answer to make it
/// a member of the language, of minimal length.
struct Completion {
  std::size_t prefix_len = 0;
  std::string text;

  std::size_t total_len() const { return prefix_len + text.size(); }
  friend bool operator==(const Completion&, const Completion&) = default;
};

enum class HintKind { NextChar, NextLexeme };

const char* to_string(HintKind kind);
std::optional<HintKind> hint_kind_from_string(std::string_view s);

struct Hint {
  HintKind kind = HintKind::NextChar;
  std::string payload;
  /// Appending the payload to the kept prefix yields a full member.
  bool is_final = false;
  /// The payload applies after this many characters of the answer; the
  /// rest of the answer is discarded.
  std::size_t prefix_len = 0;

  friend bool operator==(const Hint&, const Hint&) = default;
};

struct TextSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const TextSpan&, const TextSpan&) = default;
};

struct HintSpan {
  std::size_t start = 0;  // always the input length
  std::string text;
  bool is_final = false;  // otherwise rendered with a trailing ellipsis
  friend bool operator==(const HintSpan&, const HintSpan&) = default;
};

struct HighlightSpans {
  TextSpan green;
  TextSpan red;
  std::optional<HintSpan> hint;
  friend bool operator==(const HighlightSpans&, const HighlightSpans&) = default;
};

/// Shortest string `s` with `viable_prefix + s` in the language, choosing
/// the smallest character (in generation order) at each position among
/// equally short strings. nullopt when none exists within `budget`
/// characters or the prefix is not viable.
std::optional<std::string> shortest_extension(const engine::CompiledPattern& cp,
                                              std::string_view viable_prefix,
                                              std::size_t budget);

/// Keeps the viable prefix of `input` and completes it minimally. Throws
/// EmptyLanguage or CompletionBudgetExceeded.
Completion shortest_completion(const engine::CompiledPattern& cp, std::string_view input);

Hint next_char_hint(const engine::CompiledPattern& cp, std::string_view input);

/// First lexeme of the minimal completion together with any whitespace the
/// completion needs before it.
Hint next_lexeme_hint(const engine::CompiledPattern& cp, std::string_view input);

Hint make_hint(const Completion& completion, HintKind kind);

HighlightSpans highlight(const engine::MatchResult& match, const Hint* hint = nullptr);
HighlightSpans highlight(const engine::CompiledPattern& cp, std::string_view input,
                         const Hint* hint = nullptr);

}  // namespace linegrade::hint
