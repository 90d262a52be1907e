#include "linegrade/syntax/macros.hpp"

#include "linegrade/errors.hpp"

namespace linegrade::syntax {

namespace {

class Expander {
 public:
  explicit Expander(int next_group) : next_group_(next_group) {}

  NodePtr expand(const NodePtr& node) {
    if (!contains_macros(*node)) return node;
    const std::size_t at = node->offset;
    return std::visit(
        overloaded{
            [&](const Concat& n) -> NodePtr {
              std::vector<NodePtr> children;
              for (const auto& c : n.children) children.push_back(expand(c));
              return make_node(at, Concat{std::move(children)});
            },
            [&](const Alternation& n) -> NodePtr {
              std::vector<NodePtr> branches;
              for (const auto& b : n.branches) branches.push_back(expand(b));
              return make_node(at, Alternation{std::move(branches)});
            },
            [&](const Quantifier& n) -> NodePtr {
              Quantifier q = n;
              q.child = expand(n.child);
              return make_node(at, std::move(q));
            },
            [&](const Group& n) -> NodePtr {
              Group g = n;
              g.child = expand(n.child);
              return make_node(at, std::move(g));
            },
            [&](const Macro& m) -> NodePtr { return expand_macro(at, m); },
            [&](const auto&) -> NodePtr { return node; },
        },
        node->value);
  }

  int next_group() const { return next_group_; }

 private:
  static bool is_empty(const NodePtr& body) {
    if (!body) return true;
    const auto* c = body->as<Concat>();
    return c && c->children.empty();
  }

  static NodePtr literal_run(std::size_t at, const std::string& text) {
    if (text.size() == 1) return make_node(at, Literal{static_cast<unsigned char>(text[0])});
    std::vector<NodePtr> chars;
    for (char c : text) chars.push_back(make_node(at, Literal{static_cast<unsigned char>(c)}));
    return make_node(at, Concat{std::move(chars)});
  }

  static NodePtr optional_space(std::size_t at) {
    return make_node(at, Quantifier{make_node(at, CharClass{CharSet::space(), false, "\\s"}), 0,
                                    kUnbounded, true});
  }

  NodePtr expand_macro(std::size_t at, const Macro& m) {
    if (m.kind == MacroKind::Identifier) {
      CharSet head = CharSet::range('a', 'z');
      head.add_range('A', 'Z');
      head.add('_');
      NodePtr first = make_node(at, CharClass{head, false, "[A-Za-z_]"});
      NodePtr rest = make_node(
          at, Quantifier{make_node(at, CharClass{CharSet::word(), false, "[A-Za-z0-9_]"}), 0,
                         kUnbounded, true});
      return make_node(at, Group{make_node(at, Concat{{first, rest}}), false, 0, "", false});
    }
    if (is_empty(m.body)) throw MacroError(at, "macro body is empty");
    if (m.open.empty() || m.close.empty()) throw MacroError(at, "macro delimiter is empty");

    NodePtr body = expand(m.body);
    const int body_group = next_group_++;
    const int wrap_group = next_group_++;
    const std::string suffix = std::to_string(wrap_group);

    NodePtr call_body = make_node(at, RecursiveCall{body_group, "#body" + suffix});
    NodePtr call_wrap = make_node(at, RecursiveCall{wrap_group, "#wrap" + suffix});
    NodePtr body_def =
        make_node(at, Group{body, false, body_group, "#body" + suffix, true});

    NodePtr inner = m.kind == MacroKind::ParensOpt
                        ? make_node(at, Alternation{{call_body, call_wrap}})
                        : make_node(at, Alternation{{body_def, call_wrap}});
    NodePtr wrapped = make_node(
        at, Concat{{literal_run(at, m.open), optional_space(at),
                    make_node(at, Group{inner, false, 0, "", false}), optional_space(at),
                    literal_run(at, m.close)}});
    NodePtr wrap_def = make_node(at, Group{wrapped, false, wrap_group, "#wrap" + suffix, true});

    if (m.kind == MacroKind::ParensReq) return wrap_def;
    return make_node(at, Group{make_node(at, Alternation{{body_def, wrap_def}}), false, 0, "", false});
  }

  int next_group_;
};

}  // namespace

RegexAst expand_macros(const RegexAst& ast) {
  if (!contains_macros(*ast.root)) return ast;
  Expander expander(ast.group_count + 1);
  RegexAst out = ast;
  out.root = expander.expand(ast.root);
  out.group_count = expander.next_group() - 1;
  return out;
}

}  // namespace linegrade::syntax
