#include "linegrade/syntax/ast.hpp"

#include <cstdio>

namespace linegrade::syntax {

namespace {

std::string quote_char(unsigned char c) {
  if (c >= 0x20 && c < 0x7f && c != '\'' && c != '\\') return std::string{'\'', char(c), '\''};
  char buf[12];
  std::snprintf(buf, sizeof buf, "'\\x%02x'", c);
  return buf;
}

std::string join(const std::vector<NodePtr>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ",";
    out += dump(*nodes[i]);
  }
  return out;
}

std::string macro_name(MacroKind kind) {
  switch (kind) {
    case MacroKind::ParensOpt: return "parens_opt";
    case MacroKind::ParensReq: return "parens_req";
    case MacroKind::Identifier: return "identifier";
  }
  return "?";
}

}  // namespace

std::string dump(const Node& node) {
  return std::visit(
      overloaded{
          [](const Literal& n) { return "Literal(" + quote_char(n.ch) + ")"; },
          [](const CharClass& n) {
            return "CharClass(" + (n.spelling.empty() ? n.effective().describe() : n.spelling) + ")";
          },
          [](const AnyChar&) { return std::string("AnyChar"); },
          [](const Concat& n) { return "Concat(" + join(n.children) + ")"; },
          [](const Alternation& n) { return "Alternation(" + join(n.branches) + ")"; },
          [](const Quantifier& n) {
            return "Quantifier(" + dump(*n.child) + "," + std::to_string(n.min) + "," +
                   (n.max == kUnbounded ? std::string("inf") : std::to_string(n.max)) + "," +
                   (n.greedy ? "greedy" : "lazy") + ")";
          },
          [](const Group& n) {
            std::string tag = n.internal ? "internal " : (n.capturing ? "" : "?:");
            if (n.index > 0) tag += std::to_string(n.index);
            if (!n.name.empty()) tag += "<" + n.name + ">";
            return "Group(" + tag + "," + dump(*n.child) + ")";
          },
          [](const Backreference& n) { return "Backreference(" + std::to_string(n.group) + ")"; },
          [](const RecursiveCall& n) { return "RecursiveCall(" + std::to_string(n.group) + ")"; },
          [](const Anchor& n) {
            return std::string(n.kind == AnchorKind::Start ? "Anchor(start)" : "Anchor(end)");
          },
          [](const Macro& n) {
            std::string out = "Macro(" + macro_name(n.kind);
            if (n.body) out += ",\"" + n.open + "\",\"" + n.close + "\"," + dump(*n.body);
            return out + ")";
          },
      },
      node.value);
}

void for_each_node(const Node& node, const std::function<void(const Node&)>& fn) {
  fn(node);
  std::visit(overloaded{
                 [&](const Concat& n) {
                   for (const auto& c : n.children) for_each_node(*c, fn);
                 },
                 [&](const Alternation& n) {
                   for (const auto& c : n.branches) for_each_node(*c, fn);
                 },
                 [&](const Quantifier& n) { for_each_node(*n.child, fn); },
                 [&](const Group& n) { for_each_node(*n.child, fn); },
                 [&](const Macro& n) {
                   if (n.body) for_each_node(*n.body, fn);
                 },
                 [](const auto&) {},
             },
             node.value);
}

bool contains_macros(const Node& node) {
  bool found = false;
  for_each_node(node, [&](const Node& n) { found = found || n.is<Macro>(); });
  return found;
}

}  // namespace linegrade::syntax
