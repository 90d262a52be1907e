#include "linegrade/syntax/charset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace linegrade::syntax {

CharSet CharSet::case_folded() const {
  CharSet out = *this;
  for (unsigned c = 'a'; c <= 'z'; ++c) {
    const auto upper = static_cast<unsigned char>(c - 'a' + 'A');
    if (contains(static_cast<unsigned char>(c)) || contains(upper)) {
      out.add(static_cast<unsigned char>(c));
      out.add(upper);
    }
  }
  return out;
}

std::optional<unsigned char> CharSet::first_by_rank() const {
  for (unsigned char c : generation_order()) {
    if (contains(c)) return c;
  }
  return std::nullopt;
}

namespace {

std::string show_byte(unsigned c) {
  if (c == '\\' || c == ']' || c == '[' || c == '-' || c == '^') return std::string{'\\', char(c)};
  if (c >= 0x20 && c < 0x7f) return std::string(1, char(c));
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\x%02x", c);
  return buf;
}

}  // namespace

std::string CharSet::describe() const {
  if (size() == 256) return "[\\s\\S]";
  const bool negate = size() > 128;
  const CharSet shown = negate ? complemented() : *this;
  std::string out = negate ? "[^" : "[";
  unsigned c = 0;
  while (c < 256) {
    if (!shown.contains(static_cast<unsigned char>(c))) {
      ++c;
      continue;
    }
    unsigned end = c;
    while (end + 1 < 256 && shown.contains(static_cast<unsigned char>(end + 1))) ++end;
    out += show_byte(c);
    if (end > c + 1) out += "-";
    if (end > c) out += show_byte(end);
    c = end + 1;
  }
  out += "]";
  return out;
}

const std::array<unsigned char, 256>& generation_order() {
  static const std::array<unsigned char, 256> order = [] {
    std::array<unsigned char, 256> o{};
    std::size_t i = 0;
    for (unsigned c = 0x20; c < 0x7f; ++c) o[i++] = static_cast<unsigned char>(c);
    for (unsigned c = 0; c < 0x20; ++c) o[i++] = static_cast<unsigned char>(c);
    for (unsigned c = 0x7f; c < 0x100; ++c) o[i++] = static_cast<unsigned char>(c);
    return o;
  }();
  return order;
}

int generation_rank(unsigned char c) {
  static const std::array<int, 256> rank = [] {
    std::array<int, 256> r{};
    const auto& order = generation_order();
    for (int i = 0; i < 256; ++i) r[order[i]] = i;
    return r;
  }();
  return rank[c];
}

bool generation_less(const std::string& a, const std::string& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    return generation_rank(static_cast<unsigned char>(x)) <
           generation_rank(static_cast<unsigned char>(y));
  });
}

}  // namespace linegrade::syntax
