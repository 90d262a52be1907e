#include "linegrade/syntax/parser.hpp"

#include <cctype>
#include <optional>

#include "linegrade/errors.hpp"

namespace linegrade::syntax {

namespace {

constexpr int kMaxRepeat = 1000;
constexpr int kMaxNesting = 250;

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

struct PendingRef {
  std::shared_ptr<Node> node;
  int number = -1;  // -1 when referenced by name
  std::string name;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  RegexAst run() {
    NodePtr root = parse_alternation();
    if (!eof()) {
      // parse_alternation only stops early on ')' or a stray macro closer
      if (at_macro_close()) fail(pos_, "macro terminator without an opening macro");
      fail(pos_, "unmatched closing parenthesis");
    }
    resolve_references();
    check_anchors(*root, true, true);

    RegexAst ast;
    ast.root = std::move(root);
    ast.source = std::string(src_);
    ast.user_group_count = next_group_ - 1;
    ast.group_count = next_group_ - 1;
    ast.group_names = names_;
    return ast;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& message) const {
    throw SyntaxError(at, message);
  }

  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }
  bool at_macro_close() const { return starts_with("(?###>)"); }

  NodePtr parse_alternation() {
    if (++depth_ > kMaxNesting) fail(pos_, "pattern nested too deeply");
    const std::size_t start = pos_;
    std::vector<NodePtr> branches;
    branches.push_back(parse_concat());
    while (!eof() && peek() == '|') {
      ++pos_;
      branches.push_back(parse_concat());
    }
    --depth_;
    if (branches.size() == 1) return branches.front();
    return make_node(start, Alternation{std::move(branches)});
  }

  NodePtr parse_concat() {
    const std::size_t start = pos_;
    std::vector<NodePtr> items;
    while (!eof() && peek() != '|' && peek() != ')' && !at_macro_close()) {
      const std::size_t atom_start = pos_;
      NodePtr atom = parse_atom();
      if (!atom) {
        if (parse_quantifier_suffix(atom_start).has_value())
          fail(atom_start, "quantifier does not follow a repeatable item");
        continue;
      }
      if (auto q = parse_quantifier_suffix(atom_start)) {
        if (atom->is<Anchor>()) fail(atom_start, "quantifier does not follow a repeatable item");
        q->child = std::move(atom);
        atom = make_node(atom_start, std::move(*q));
        if (!eof() && is_quantifier_start())
          fail(pos_, "quantifier does not follow a repeatable item");
      }
      items.push_back(std::move(atom));
    }
    if (items.size() == 1) return items.front();
    return make_node(start, Concat{std::move(items)});
  }

  bool is_quantifier_start() const {
    const char c = peek();
    return c == '*' || c == '+' || c == '?' || (c == '{' && brace_quantifier_length() > 0);
  }

  // Length of a `{n}`, `{n,}` or `{n,m}` at pos_, or 0 if the brace is literal.
  std::size_t brace_quantifier_length() const {
    std::size_t i = pos_ + 1;
    auto digits = [&] {
      const std::size_t from = i;
      while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
      return i - from;
    };
    if (digits() == 0) return 0;
    if (i < src_.size() && src_[i] == ',') {
      ++i;
      digits();
    }
    if (i < src_.size() && src_[i] == '}') return i + 1 - pos_;
    return 0;
  }

  int read_bound(std::size_t& i) const {
    long value = 0;
    const std::size_t from = i;
    while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) {
      value = value * 10 + (src_[i] - '0');
      if (value > kMaxRepeat) fail(from, "repetition bound exceeds " + std::to_string(kMaxRepeat));
      ++i;
    }
    return static_cast<int>(value);
  }

  std::optional<Quantifier> parse_quantifier_suffix(std::size_t atom_start) {
    if (eof()) return std::nullopt;
    Quantifier q;
    const std::size_t qpos = pos_;
    switch (peek()) {
      case '*': q.min = 0; q.max = kUnbounded; ++pos_; break;
      case '+': q.min = 1; q.max = kUnbounded; ++pos_; break;
      case '?': q.min = 0; q.max = 1; ++pos_; break;
      case '{': {
        const std::size_t len = brace_quantifier_length();
        if (len == 0) return std::nullopt;
        std::size_t i = pos_ + 1;
        q.min = read_bound(i);
        if (src_[i] == ',') {
          ++i;
          q.max = src_[i] == '}' ? kUnbounded : read_bound(i);
        } else {
          q.max = q.min;
        }
        if (q.max != kUnbounded && q.max < q.min)
          fail(qpos, "numbers out of order in {} quantifier");
        pos_ += len;
        break;
      }
      default: return std::nullopt;
    }
    (void)atom_start;
    if (!eof() && peek() == '?') {
      q.greedy = false;
      ++pos_;
    } else if (!eof() && peek() == '+') {
      fail(pos_, "possessive quantifiers are not supported");
    }
    return q;
  }

  NodePtr parse_atom() {
    const std::size_t at = pos_;
    const char c = peek();
    switch (c) {
      case '(': return parse_group();
      case '[': return parse_class();
      case '.': ++pos_; return make_node(at, AnyChar{});
      case '^': ++pos_; return make_node(at, Anchor{AnchorKind::Start});
      case '$': ++pos_; return make_node(at, Anchor{AnchorKind::End});
      case '\\': return parse_escape();
      case '*':
      case '+':
      case '?': fail(at, "quantifier does not follow a repeatable item");
      case '{':
        if (brace_quantifier_length() > 0) fail(at, "quantifier does not follow a repeatable item");
        ++pos_;
        return make_node(at, Literal{'{'});
      default: ++pos_; return make_node(at, Literal{static_cast<unsigned char>(c)});
    }
  }

  std::string read_name(std::size_t group_start, char terminator) {
    const std::size_t from = pos_;
    if (eof() || !is_name_start(peek())) fail(group_start, "group name expected");
    while (!eof() && is_name_char(peek())) ++pos_;
    if (eof() || peek() != terminator) fail(group_start, "malformed group name");
    std::string name(src_.substr(from, pos_ - from));
    ++pos_;
    return name;
  }

  void expect_group_close(std::size_t group_start) {
    if (eof() || peek() != ')') fail(group_start, "missing closing parenthesis");
    ++pos_;
  }

  NodePtr parse_group() {
    const std::size_t start = pos_;
    ++pos_;  // '('
    if (peek() != '?') return parse_capturing_group(start, "");

    ++pos_;  // '?'
    const char c = peek();
    if (c == ':') {
      ++pos_;
      NodePtr body = parse_alternation();
      expect_group_close(start);
      return make_node(start, Group{std::move(body), false, 0, "", false});
    }
    if (c == '=' ) fail(start, "look-ahead assertions are not supported");
    if (c == '!') fail(start, "negative look-ahead assertions are not supported");
    if (c == '<' && (peek(1) == '=' || peek(1) == '!'))
      fail(start, "look-behind assertions are not supported");
    if (c == '>') fail(start, "atomic groups are not supported");
    if (c == '(') fail(start, "conditional subpatterns are not supported");
    if (c == '|') fail(start, "branch reset groups are not supported");
    if (c == '<' || c == '\'') {
      ++pos_;
      return parse_capturing_group(start, read_name(start, c == '<' ? '>' : '\''));
    }
    if (c == 'P' && peek(1) == '<') {
      pos_ += 2;
      return parse_capturing_group(start, read_name(start, '>'));
    }
    if (c == 'P' && peek(1) == '>') {
      pos_ += 2;
      return make_call(start, -1, read_name(start, ')'));
    }
    if (c == '&') {
      ++pos_;
      return make_call(start, -1, read_name(start, ')'));
    }
    if (c == 'R') {
      ++pos_;
      expect_group_close(start);
      return make_call(start, 0, "");
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t i = pos_;
      long n = 0;
      while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) {
        n = n * 10 + (src_[i] - '0');
        if (n > 100000) fail(start, "group number too large");
        ++i;
      }
      pos_ = i;
      expect_group_close(start);
      return make_call(start, static_cast<int>(n), "");
    }
    if (c == '#') {
      if (starts_with("###")) return parse_macro(start);
      while (!eof() && peek() != ')') ++pos_;
      if (eof()) fail(start, "missing ) after comment");
      ++pos_;
      return nullptr;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '-')
      fail(start, "inline option settings are not supported");
    fail(start, "unrecognized character after (?");
  }

  NodePtr parse_capturing_group(std::size_t start, std::string name) {
    const int index = next_group_++;
    if (!name.empty()) {
      if (names_.count(name)) fail(start, "duplicate group name '" + name + "'");
      names_[name] = index;
    }
    NodePtr body = parse_alternation();
    expect_group_close(start);
    return make_node(start, Group{std::move(body), true, index, std::move(name), false});
  }

  NodePtr make_call(std::size_t start, int number, std::string name) {
    auto node = std::make_shared<Node>(Node{start, RecursiveCall{number < 0 ? 0 : number, name}});
    pending_.push_back({node, number, std::move(name)});
    return node;
  }

  NodePtr make_backref(std::size_t start, int number, std::string name) {
    auto node = std::make_shared<Node>(Node{start, Backreference{number < 0 ? 0 : number, name}});
    pending_.push_back({node, number, std::move(name)});
    return node;
  }

  std::string read_delimiter(std::size_t macro_start) {
    std::string out;
    while (!eof() && peek() != '|') {
      if (peek() == '\\' && pos_ + 1 < src_.size()) ++pos_;
      out += peek();
      ++pos_;
    }
    if (eof()) fail(macro_start, "unterminated macro delimiter list");
    ++pos_;  // '|'
    return out;
  }

  NodePtr parse_macro(std::size_t start) {
    pos_ += 3;  // "###", the "(?" is already consumed
    const std::size_t name_from = pos_;
    while (!eof() && is_name_char(peek())) ++pos_;
    const std::string name(src_.substr(name_from, pos_ - name_from));
    if (name.empty()) fail(start, "macro name expected");

    if (peek() == ')') {
      ++pos_;
      if (name == "identifier") return make_node(start, Macro{MacroKind::Identifier, "", "", nullptr});
      fail(start, "unknown macro '" + name + "'");
    }
    if (peek() != '<') fail(start, "malformed macro '" + name + "'");
    ++pos_;

    Macro macro{MacroKind::ParensOpt, "(", ")", nullptr};
    if (name == "parens_opt" || name == "parens_req") {
      macro.kind = name == "parens_opt" ? MacroKind::ParensOpt : MacroKind::ParensReq;
    } else if (name == "brackets_opt" || name == "brackets_req") {
      macro.kind = name == "brackets_opt" ? MacroKind::ParensOpt : MacroKind::ParensReq;
      macro.open = "[";
      macro.close = "]";
    } else if (name == "custom_parens_opt" || name == "custom_parens_req") {
      macro.kind = name == "custom_parens_opt" ? MacroKind::ParensOpt : MacroKind::ParensReq;
      macro.open = read_delimiter(start);
      macro.close = read_delimiter(start);
    } else {
      fail(start, "unknown macro '" + name + "'");
    }
    if (peek() != ')') fail(start, "malformed macro '" + name + "'");
    ++pos_;

    macro.body = parse_alternation();
    if (!at_macro_close()) fail(start, "unterminated macro '" + name + "'");
    pos_ += 7;
    return make_node(start, std::move(macro));
  }

  // Escapes shared by classes and the top level. Returns the literal byte or
  // nullopt if the escape is not a single-character one.
  std::optional<unsigned char> simple_escape(std::size_t at) {
    const char c = peek();
    switch (c) {
      case 'n': ++pos_; return '\n';
      case 't': ++pos_; return '\t';
      case 'r': ++pos_; return '\r';
      case 'f': ++pos_; return '\f';
      case 'v': ++pos_; return '\v';
      case 'e': ++pos_; return 0x1b;
      case 'a': ++pos_; return 0x07;
      case '0': ++pos_; return 0;
      case 'x': {
        ++pos_;
        int value = 0;
        if (peek() == '{') {
          ++pos_;
          int count = 0;
          while (!eof() && hex_value(peek()) >= 0) {
            value = value * 16 + hex_value(peek());
            if (value > 0xff) fail(at, "character code out of range");
            ++pos_;
            ++count;
          }
          if (count == 0 || peek() != '}') fail(at, "malformed \\x{...} escape");
          ++pos_;
        } else {
          for (int k = 0; k < 2 && hex_value(peek()) >= 0; ++k) {
            value = value * 16 + hex_value(peek());
            ++pos_;
          }
        }
        return static_cast<unsigned char>(value);
      }
      default: break;
    }
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      ++pos_;
      return static_cast<unsigned char>(c);
    }
    return std::nullopt;
  }

  std::optional<CharClass> shorthand_class(char c) const {
    switch (c) {
      case 'd': return CharClass{CharSet::digit(), false, "\\d"};
      case 'D': return CharClass{CharSet::digit(), true, "\\D"};
      case 'w': return CharClass{CharSet::word(), false, "\\w"};
      case 'W': return CharClass{CharSet::word(), true, "\\W"};
      case 's': return CharClass{CharSet::space(), false, "\\s"};
      case 'S': return CharClass{CharSet::space(), true, "\\S"};
      default: return std::nullopt;
    }
  }

  [[noreturn]] void unsupported_escape(std::size_t at, char c) const {
    switch (c) {
      case 'b':
      case 'B': fail(at, std::string("word boundary assertion \\") + c + " is not supported");
      case 'A':
      case 'z':
      case 'Z':
      case 'G': fail(at, std::string("assertion \\") + c + " is not supported");
      case 'p':
      case 'P':
      case 'X': fail(at, "Unicode property escapes are not supported");
      case 'Q':
      case 'E': fail(at, "\\Q...\\E quoting is not supported");
      default: fail(at, std::string("unrecognized escape \\") + c);
    }
  }

  NodePtr parse_escape() {
    const std::size_t at = pos_;
    ++pos_;  // '\'
    if (eof()) fail(at, "pattern ends with a backslash");
    const char c = peek();
    if (auto cls = shorthand_class(c)) {
      ++pos_;
      return make_node(at, std::move(*cls));
    }
    if (c >= '1' && c <= '9') {
      long n = 0;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        n = n * 10 + (peek() - '0');
        if (n > 100000) fail(at, "group number too large");
        ++pos_;
      }
      return make_backref(at, static_cast<int>(n), "");
    }
    if (c == 'k') {
      ++pos_;
      const char open = peek();
      const char close = open == '<' ? '>' : open == '{' ? '}' : open == '\'' ? '\'' : '\0';
      if (!close) fail(at, "\\k must be followed by <name>, {name} or 'name'");
      ++pos_;
      return make_backref(at, -1, read_name(at, close));
    }
    if (c == 'g') {
      ++pos_;
      const bool braced = peek() == '{';
      if (braced) ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        long n = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
          n = n * 10 + (peek() - '0');
          if (n > 100000) fail(at, "group number too large");
          ++pos_;
        }
        if (braced) {
          if (peek() != '}') fail(at, "malformed \\g reference");
          ++pos_;
        }
        if (n == 0) fail(at, "reference to group 0 is not allowed");
        return make_backref(at, static_cast<int>(n), "");
      }
      if (!braced) fail(at, "malformed \\g reference");
      return make_backref(at, -1, read_name(at, '}'));
    }
    if (auto lit = simple_escape(at)) return make_node(at, Literal{*lit});
    unsupported_escape(at, c);
  }

  NodePtr parse_class() {
    const std::size_t start = pos_;
    ++pos_;  // '['
    CharClass cls;
    if (peek() == '^') {
      cls.negated = true;
      ++pos_;
    }
    bool first = true;
    for (;;) {
      if (eof()) fail(start, "missing terminating ] for character class");
      const std::size_t item_at = pos_;
      char c = peek();
      if (c == ']' && !first) {
        ++pos_;
        break;
      }
      first = false;

      std::optional<unsigned char> lo;
      if (c == '\\') {
        ++pos_;
        if (eof()) fail(start, "missing terminating ] for character class");
        if (auto sh = shorthand_class(peek())) {
          ++pos_;
          cls.set.merge(sh->effective());
          continue;
        }
        if (peek() == 'b') {
          ++pos_;
          lo = 0x08;
        } else {
          lo = simple_escape(item_at);
          if (!lo) unsupported_escape(item_at, peek());
        }
      } else {
        lo = static_cast<unsigned char>(c);
        ++pos_;
      }

      if (peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] != ']') {
        const std::size_t dash = pos_;
        ++pos_;
        std::optional<unsigned char> hi;
        if (peek() == '\\') {
          ++pos_;
          if (eof()) fail(start, "missing terminating ] for character class");
          if (shorthand_class(peek())) fail(dash, "invalid range in character class");
          hi = simple_escape(dash);
          if (!hi) unsupported_escape(dash, peek());
        } else {
          hi = static_cast<unsigned char>(peek());
          ++pos_;
        }
        if (*hi < *lo) fail(item_at, "range out of order in character class");
        cls.set.add_range(*lo, *hi);
      } else {
        cls.set.add(*lo);
      }
    }
    cls.spelling = std::string(src_.substr(start, pos_ - start));
    return make_node(start, std::move(cls));
  }

  void resolve_references() {
    const int groups = next_group_ - 1;
    for (auto& ref : pending_) {
      int index = ref.number;
      if (index < 0) {
        auto it = names_.find(ref.name);
        if (it == names_.end())
          fail(ref.node->offset, "reference to non-existent group '" + ref.name + "'");
        index = it->second;
      } else if (index > groups) {
        fail(ref.node->offset, "reference to non-existent group " + std::to_string(index));
      }
      if (auto* call = std::get_if<RecursiveCall>(&ref.node->value)) call->group = index;
      if (auto* back = std::get_if<Backreference>(&ref.node->value)) back->group = index;
    }
  }

  static bool is_zero_width(const Node& n) { return n.is<Anchor>(); }

  void check_anchors(const Node& node, bool at_start, bool at_end) const {
    std::visit(overloaded{
                   [&](const Anchor& a) {
                     if (a.kind == AnchorKind::Start && !at_start)
                       fail(node.offset, "'^' is only allowed at the start of the pattern");
                     if (a.kind == AnchorKind::End && !at_end)
                       fail(node.offset, "'$' is only allowed at the end of the pattern");
                   },
                   [&](const Concat& c) {
                     const auto& ch = c.children;
                     for (std::size_t i = 0; i < ch.size(); ++i) {
                       bool s = at_start, e = at_end;
                       for (std::size_t j = 0; j < i && s; ++j) s = is_zero_width(*ch[j]);
                       for (std::size_t j = i + 1; j < ch.size() && e; ++j) e = is_zero_width(*ch[j]);
                       check_anchors(*ch[i], s, e);
                     }
                   },
                   [&](const Alternation& a) {
                     for (const auto& b : a.branches) check_anchors(*b, at_start, at_end);
                   },
                   [&](const Group& g) { check_anchors(*g.child, at_start, at_end); },
                   [&](const Quantifier& q) { check_anchors(*q.child, false, false); },
                   [&](const Macro& m) {
                     if (m.body) check_anchors(*m.body, false, false);
                   },
                   [](const auto&) {},
               },
               node.value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  int next_group_ = 1;
  std::map<std::string, int> names_;
  std::vector<PendingRef> pending_;
};

}  // namespace

RegexAst parse(std::string_view pattern) { return Parser(pattern).run(); }

}  // namespace linegrade::syntax
