#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace linegrade::hint {

enum class LexemeKind { Word, Number, Space, Operator, Other };

struct Lexeme {
  LexemeKind kind;
  std::string text;
};

/// Greedy longest-match segmentation: identifiers/keywords, numbers with an
/// optional fraction, whitespace runs, the multi-character operators
/// `<< >> <= >= == != && || ++ -- += -= *= /= -> ::`, otherwise single
/// characters. Concatenating the texts gives back the input.
std::vector<Lexeme> lex(std::string_view s);

/// Texts of `lex(s)`.
std::vector<std::string> tokenize(std::string_view s);

/// Lexemes that are not whitespace.
std::size_t count_tokens(std::string_view s);

}  // namespace linegrade::hint
