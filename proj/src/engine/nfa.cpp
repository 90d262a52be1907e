#include "engine/nfa.hpp"

#include <algorithm>

namespace linegrade::engine::detail {

namespace {

struct Scratch {
  std::vector<unsigned> seen;
  unsigned stamp = 0;
  std::vector<int> stack;

  unsigned next(std::size_t size) {
    if (seen.size() < size) seen.resize(size, 0);
    if (++stamp == 0) {
      std::fill(seen.begin(), seen.end(), 0);
      stamp = 1;
    }
    return stamp;
  }
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

void Nfa::close(int pc, std::vector<int>& out, std::vector<unsigned>& seen, unsigned stamp) const {
  auto& stack = scratch().stack;
  stack.clear();
  stack.push_back(pc);
  while (!stack.empty()) {
    const int at = stack.back();
    stack.pop_back();
    if (seen[at] == stamp || prog_.min_rest[at] >= kInf) continue;
    seen[at] = stamp;
    const Instr& in = prog_.code[at];
    switch (in.op) {
      case Op::Char:
      case Op::Match: out.push_back(at); break;
      case Op::Split:
        stack.push_back(in.b);
        stack.push_back(in.a);
        break;
      case Op::Jump: stack.push_back(in.a); break;
      case Op::Save:
      case Op::Mark:
      case Op::Check: stack.push_back(at + 1); break;
      default: break;  // not present in regular programs
    }
  }
}

std::vector<int> Nfa::initial() const {
  auto& s = scratch();
  const unsigned stamp = s.next(prog_.code.size());
  std::vector<int> out;
  close(prog_.start, out, s.seen, stamp);
  return out;
}

std::vector<int> Nfa::step(const std::vector<int>& from, unsigned char c) const {
  auto& s = scratch();
  const unsigned stamp = s.next(prog_.code.size());
  std::vector<int> out;
  for (int pc : from) {
    const Instr& in = prog_.code[pc];
    if (in.op == Op::Char && prog_.sets[in.a].contains(c)) close(pc + 1, out, s.seen, stamp);
  }
  return out;
}

std::vector<int> Nfa::step_on_shortest(const std::vector<int>& from, unsigned char c,
                                       int rest) const {
  auto& s = scratch();
  const unsigned stamp = s.next(prog_.code.size());
  std::vector<int> out;
  for (int pc : from) {
    const Instr& in = prog_.code[pc];
    if (in.op == Op::Char && prog_.min_rest[pc] == rest && prog_.sets[in.a].contains(c))
      close(pc + 1, out, s.seen, stamp);
  }
  return out;
}

bool Nfa::accepting(const std::vector<int>& states) const {
  return std::any_of(states.begin(), states.end(),
                     [&](int pc) { return prog_.code[pc].op == Op::Match; });
}

int Nfa::distance(const std::vector<int>& states) const {
  int best = kInf;
  for (int pc : states) best = std::min(best, prog_.min_rest[pc]);
  return best;
}

}  // namespace linegrade::engine::detail
