#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "linegrade/engine/matcher.hpp"
#include "linegrade/syntax/ast.hpp"

namespace linegrade::syntax {

struct PatternMetrics {
  std::size_t shortest_answer_chars = 0;
  std::size_t shortest_answer_tokens = 0;
  /// Saturates at UINT64_MAX.
  std::uint64_t path_count = 1;
  bool uses_recursion = false;
  bool uses_backreferences = false;
  int capture_group_count = 0;
  /// The shortest member itself (lowest in generation order among ties).
  std::string shortest_answer;
};

inline constexpr std::size_t kAnalysisBudget = 4096;

/// Structural path count: alternation adds, concatenation multiplies, an
/// optional quantifier adds the skip path, references count once.
std::uint64_t path_count(const Node& node);

/// Expands macros if needed, compiles and measures. Throws
/// AnalysisBudgetExceeded when no member is at most `budget` long.
PatternMetrics analyze(const RegexAst& ast, std::size_t budget = kAnalysisBudget,
                       engine::MatchOptions options = {});

}  // namespace linegrade::syntax
