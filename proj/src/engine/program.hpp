#pragma once

#include <climits>
#include <cstdint>
#include <vector>

#include "linegrade/engine/matcher.hpp"
#include "linegrade/syntax/charset.hpp"

namespace linegrade::engine::detail {

inline constexpr int kInf = INT_MAX / 4;

enum class Op : std::uint8_t {
  Char,     // a: set index
  Split,    // a: preferred target, b: alternative
  Jump,     // a: target
  Save,     // a: capture slot
  Mark,     // a: loop register := pos
  Check,    // a: fail if loop register == pos (empty iteration)
  BackRef,  // a: group
  Call,     // a: group, b: 1 keeps captures made by the callee (macro groups)
  Return,
  Match,
};

struct Instr {
  Op op;
  int a = 0;
  int b = 0;
};

struct Program {
  std::vector<Instr> code;
  std::vector<syntax::CharSet> sets;
  std::vector<unsigned char> first_char;  // per set, lowest by generation rank
  std::vector<int> sub_entry;             // per group index, -1 if never called
  int start = 0;
  int user_groups = 0;
  int groups = 0;
  int reg_count = 0;
  bool has_backrefs = false;
  bool has_calls = false;
  bool case_insensitive = false;
  /// Lower bound on the characters consumed from pc to the end of the
  /// current frame (Match or Return); kInf if that end is unreachable.
  /// Exact for regular programs.
  std::vector<int> min_rest;

  int slot_count() const { return 2 * (groups + 1); }
  bool regular() const { return !has_backrefs && !has_calls; }
};

Program build_program(const syntax::RegexAst& ast, const MatchOptions& options);

inline int add_sat(int x, int y) { return (x >= kInf || y >= kInf || x + y >= kInf) ? kInf : x + y; }

}  // namespace linegrade::engine::detail
