#include "linegrade/syntax/analysis.hpp"

#include <limits>

#include "linegrade/errors.hpp"
#include "linegrade/hint/hints.hpp"
#include "linegrade/hint/tokenizer.hpp"
#include "linegrade/syntax/macros.hpp"

namespace linegrade::syntax {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  return (a != 0 && b > kMax / a) ? kMax : a * b;
}

}  // namespace

std::uint64_t path_count(const Node& node) {
  return std::visit(
      overloaded{
          [](const Concat& c) {
            std::uint64_t n = 1;
            for (const auto& ch : c.children) n = sat_mul(n, path_count(*ch));
            return n;
          },
          [](const Alternation& a) {
            std::uint64_t n = 0;
            for (const auto& b : a.branches) n = sat_add(n, path_count(*b));
            return n;
          },
          [](const Quantifier& q) {
            const std::uint64_t n = path_count(*q.child);
            return q.min == 0 ? sat_add(n, 1) : n;
          },
          [](const Group& g) { return path_count(*g.child); },
          [](const Macro& m) { return m.body ? path_count(*m.body) : std::uint64_t{1}; },
          [](const auto&) { return std::uint64_t{1}; },
      },
      node.value);
}

PatternMetrics analyze(const RegexAst& ast, std::size_t budget, engine::MatchOptions options) {
  const RegexAst expanded = expand_macros(ast);
  PatternMetrics m;
  m.path_count = path_count(*expanded.root);
  m.capture_group_count = expanded.user_group_count;
  for_each_node(*expanded.root, [&](const Node& n) {
    if (n.is<RecursiveCall>()) m.uses_recursion = true;
    if (n.is<Backreference>()) m.uses_backreferences = true;
  });

  const auto cp = engine::compile(expanded, options);
  if (!cp.language_nonempty()) throw AnalysisBudgetExceeded(budget);
  std::optional<std::string> witness;
  try {
    witness = hint::shortest_extension(cp, "", budget);
  } catch (const BudgetExceeded&) {
    throw AnalysisBudgetExceeded(budget);
  }
  if (!witness) throw AnalysisBudgetExceeded(budget);
  m.shortest_answer = std::move(*witness);
  m.shortest_answer_chars = m.shortest_answer.size();
  m.shortest_answer_tokens = hint::count_tokens(m.shortest_answer);
  return m;
}

}  // namespace linegrade::syntax
