#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "engine/program.hpp"

namespace linegrade::engine::detail {

// What a search over "fixed text followed by freely generated text" looks for.
enum class SearchMode {
  // First accepting path in backtracking priority order whose generated
  // tail is at most `budget` long. With budget 0 this is an ordinary
  // anchored match and the captures follow leftmost-greedy rules.
  Exists,
  // Union of the characters that can start a generated tail of at most
  // `budget` characters (an over-approximation; used to enumerate
  // candidates for the next completion character).
  CollectFirst,
  // Furthest position inside the fixed text that any path consumes.
  MaxReach,
};

struct SearchOutcome {
  bool success = false;
  std::vector<int> slots;   // capture slots of the accepting path
  std::string generated;    // generated tail of the accepting path
  syntax::CharSet first;    // CollectFirst
  std::size_t reach = 0;    // MaxReach
};

// Backtracking interpreter with captures, backreferences, subroutine calls,
// a step budget and a recursion limit. For programs without backreferences
// it memoizes failed (pc, position, call stack) states.
class Backtracker {
 public:
  Backtracker(const Program& program, const MatchOptions& options)
      : prog_(program), options_(options) {}

  SearchOutcome run(std::string_view fixed, std::size_t budget, SearchMode mode) const;

  bool exists(std::string_view fixed, std::size_t budget) const {
    return run(fixed, budget, SearchMode::Exists).success;
  }

 private:
  const Program& prog_;
  MatchOptions options_;
};

}  // namespace linegrade::engine::detail
