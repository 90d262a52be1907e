#pragma once

#include <string>

#include "linegrade/engine/matcher.hpp"
#include "linegrade/syntax/macros.hpp"
#include "linegrade/syntax/parser.hpp"

namespace testing {

inline linegrade::engine::CompiledPattern compile_pattern(const std::string& pattern,
                                                          linegrade::engine::MatchOptions options = {}) {
  return linegrade::engine::compile(
      linegrade::syntax::expand_macros(linegrade::syntax::parse(pattern)), options);
}

inline linegrade::engine::MatchOptions backtracking() {
  linegrade::engine::MatchOptions o;
  o.force_backtracking = true;
  return o;
}

inline bool full(const linegrade::engine::CompiledPattern& cp, const std::string& s) {
  return linegrade::engine::match_full(cp, s).verdict == linegrade::engine::Verdict::Full;
}

/// All strings over `alphabet` of length at most `max_len`, shortest first.
template <class F>
void for_each_string(const std::string& alphabet, std::size_t max_len, F&& f) {
  std::string s;
  const auto rec = [&](auto& self, std::size_t len) -> void {
    if (s.size() == len) {
      f(s);
      return;
    }
    for (char c : alphabet) {
      s.push_back(c);
      self(self, len);
      s.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_len; ++len) rec(rec, len);
}

}  // namespace testing
