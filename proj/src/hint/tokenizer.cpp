#include "linegrade/hint/tokenizer.hpp"

#include <array>
#include <cctype>

namespace linegrade::hint {

namespace {

constexpr std::array<std::string_view, 16> kOperators = {
    "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "->", "::"};

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Lexeme> lex(std::string_view s) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t start = i;
    LexemeKind kind = LexemeKind::Other;
    if (word_start(s[i])) {
      kind = LexemeKind::Word;
      while (i < s.size() && word_char(s[i])) ++i;
    } else if (digit(s[i])) {
      kind = LexemeKind::Number;
      while (i < s.size() && digit(s[i])) ++i;
      if (i + 1 < s.size() && s[i] == '.' && digit(s[i + 1])) {
        ++i;
        while (i < s.size() && digit(s[i])) ++i;
      }
    } else if (space(s[i])) {
      kind = LexemeKind::Space;
      while (i < s.size() && space(s[i])) ++i;
    } else {
      for (auto op : kOperators) {
        if (s.substr(i).starts_with(op)) {
          kind = LexemeKind::Operator;
          i += op.size();
          break;
        }
      }
      if (kind == LexemeKind::Other) ++i;
    }
    out.push_back({kind, std::string(s.substr(start, i - start))});
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  for (auto& l : lex(s)) out.push_back(std::move(l.text));
  return out;
}

std::size_t count_tokens(std::string_view s) {
  std::size_t n = 0;
  for (const auto& l : lex(s))
    if (l.kind != LexemeKind::Space) ++n;
  return n;
}

}  // namespace linegrade::hint
