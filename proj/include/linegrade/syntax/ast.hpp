#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "linegrade/syntax/charset.hpp"

namespace linegrade::syntax {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

inline constexpr int kUnbounded = -1;

struct Literal {
  unsigned char ch;
};

/// Bracket class or shorthand escape. `set` is the class as written; the
/// matched set is its complement when `negated`.
struct CharClass {
  CharSet set;
  bool negated = false;
  std::string spelling;

  CharSet effective() const { return negated ? set.complemented() : set; }
};

/// `.`: any byte except newline.
struct AnyChar {};

struct Concat {
  std::vector<NodePtr> children;
};

struct Alternation {
  std::vector<NodePtr> branches;
};

struct Quantifier {
  NodePtr child;
  int min = 0;
  int max = kUnbounded;
  bool greedy = true;
};

/// `index` is 0 for plain non-capturing groups. Groups created by macro
/// expansion are `internal`: callable by index but never reported as
/// captures and numbered after every user group.
struct Group {
  NodePtr child;
  bool capturing = false;
  int index = 0;
  std::string name;
  bool internal = false;
};

struct Backreference {
  int group = 0;
  std::string name;
};

/// Subroutine call; group 0 is the whole pattern, as in `(?R)`.
struct RecursiveCall {
  int group = 0;
  std::string name;
};

enum class AnchorKind { Start, End };

struct Anchor {
  AnchorKind kind;
};

enum class MacroKind { ParensOpt, ParensReq, Identifier };

struct Macro {
  MacroKind kind;
  std::string open;
  std::string close;
  NodePtr body;  // null for Identifier
};

struct Node {
  using Value = std::variant<Literal, CharClass, AnyChar, Concat, Alternation, Quantifier, Group,
                             Backreference, RecursiveCall, Anchor, Macro>;

  std::size_t offset = 0;
  Value value;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&value);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(value);
  }
};

template <class T>
NodePtr make_node(std::size_t offset, T value) {
  return std::make_shared<const Node>(Node{offset, Node::Value{std::move(value)}});
}

struct RegexAst {
  NodePtr root;
  std::string source;
  int user_group_count = 0;
  /// Highest group index in use, internal macro groups included.
  int group_count = 0;
  std::map<std::string, int> group_names;
};

/// S-expression dump used in diagnostics and tests, e.g.
/// `Concat(Literal('a'),Quantifier(CharClass(\s),0,inf,greedy))`.
std::string dump(const Node& node);
inline std::string dump(const RegexAst& ast) { return dump(*ast.root); }

bool contains_macros(const Node& node);

/// Helpers for walking the tree.
template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

void for_each_node(const Node& node, const std::function<void(const Node&)>& fn);

}  // namespace linegrade::syntax
