#pragma once

#include <vector>

#include "engine/program.hpp"

namespace linegrade::engine::detail {

// State-set simulation of a regular program. A state set holds the Char
// and Match instructions reachable through epsilon moves, restricted to
// those that can still reach Match.
class Nfa {
 public:
  explicit Nfa(const Program& program) : prog_(program) {}

  std::vector<int> initial() const;
  /// States after consuming `c` from `from`.
  std::vector<int> step(const std::vector<int>& from, unsigned char c) const;
  /// States after consuming `c` from the subset of `from` whose min_rest is
  /// exactly `rest`.
  std::vector<int> step_on_shortest(const std::vector<int>& from, unsigned char c, int rest) const;
  bool accepting(const std::vector<int>& states) const;
  /// Minimal characters to reach Match, kInf for an empty set.
  int distance(const std::vector<int>& states) const;

 private:
  void close(int pc, std::vector<int>& out, std::vector<unsigned>& seen, unsigned stamp) const;
  const Program& prog_;
};

}  // namespace linegrade::engine::detail
