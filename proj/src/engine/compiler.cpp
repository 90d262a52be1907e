#include <algorithm>
#include <map>

#include "engine/program.hpp"
#include "linegrade/errors.hpp"

namespace linegrade::engine::detail {

namespace {

using namespace linegrade::syntax;

constexpr std::size_t kMaxProgram = 200'000;

// Whether the node might match the empty string; calls and backreferences
// are assumed to.
bool may_be_empty(const Node& node) {
  return std::visit(overloaded{
                        [](const Literal&) { return false; },
                        [](const CharClass&) { return false; },
                        [](const AnyChar&) { return false; },
                        [](const Concat& c) {
                          return std::all_of(c.children.begin(), c.children.end(),
                                             [](const NodePtr& n) { return may_be_empty(*n); });
                        },
                        [](const Alternation& a) {
                          return std::any_of(a.branches.begin(), a.branches.end(),
                                             [](const NodePtr& n) { return may_be_empty(*n); });
                        },
                        [](const Quantifier& q) { return q.min == 0 || may_be_empty(*q.child); },
                        [](const Group& g) { return may_be_empty(*g.child); },
                        [](const auto&) { return true; },
                    },
                    node.value);
}

class Compiler {
 public:
  Compiler(const RegexAst& ast, const MatchOptions& options) : ast_(ast) {
    prog_.case_insensitive = !options.case_sensitive;
    prog_.user_groups = ast.user_group_count;
    prog_.groups = ast.group_count;
    prog_.sub_entry.assign(static_cast<std::size_t>(ast.group_count) + 1, -1);
    called_.assign(static_cast<std::size_t>(ast.group_count) + 1, false);
    group_nodes_.assign(static_cast<std::size_t>(ast.group_count) + 1, nullptr);
    for_each_node(*ast.root, [&](const Node& n) {
      if (const auto* g = n.as<Group>(); g && g->index > 0) group_nodes_[g->index] = &n;
    });
  }

  Program run() {
    prog_.start = 0;
    gen(*ast_.root);
    emit({Op::Match});
    for (bool pending = true; pending;) {
      pending = false;
      for (int g = 0; g <= prog_.groups; ++g) {
        if (!called_[g] || prog_.sub_entry[g] >= 0) continue;
        pending = true;
        compile_subroutine(g);
      }
    }
    prog_.first_char.reserve(prog_.sets.size());
    for (const auto& s : prog_.sets) prog_.first_char.push_back(s.first_by_rank().value_or(0));
    compute_min_rest();
    return std::move(prog_);
  }

 private:
  void compile_subroutine(int g) {
    prog_.sub_entry[g] = here();
    if (g == 0) {
      gen(*ast_.root);
    } else {
      const Node* node = group_nodes_[g];
      if (!node) throw CompileError("call to group " + std::to_string(g) + " without definition");
      gen_group_body(*node->as<Group>());
    }
    emit({Op::Return});
  }

  int emit(Instr instr) {
    if (prog_.code.size() >= kMaxProgram) throw CompileError("pattern too large to compile");
    prog_.code.push_back(instr);
    return static_cast<int>(prog_.code.size()) - 1;
  }
  int here() const { return static_cast<int>(prog_.code.size()); }

  int set_index(CharSet set) {
    if (prog_.case_insensitive) set = set.case_folded();
    auto it = set_ids_.find(set_key(set));
    if (it != set_ids_.end()) return it->second;
    const int id = static_cast<int>(prog_.sets.size());
    prog_.sets.push_back(set);
    set_ids_.emplace(set_key(set), id);
    return id;
  }

  static std::string set_key(const CharSet& s) {
    std::string key(256, '0');
    for (int c = 0; c < 256; ++c)
      if (s.contains(static_cast<unsigned char>(c))) key[c] = '1';
    return key;
  }

  void gen_group_body(const Group& g) {
    const bool save = g.capturing && !g.internal && g.index > 0;
    if (save) emit({Op::Save, 2 * g.index});
    gen(*g.child);
    if (save) emit({Op::Save, 2 * g.index + 1});
  }

  void gen(const Node& node) {
    std::visit(
        overloaded{
            [&](const Literal& n) { emit({Op::Char, set_index(CharSet::single(n.ch))}); },
            [&](const CharClass& n) { emit({Op::Char, set_index(n.effective())}); },
            [&](const AnyChar&) { emit({Op::Char, set_index(CharSet::any_but_newline())}); },
            [&](const Concat& n) {
              for (const auto& c : n.children) gen(*c);
            },
            [&](const Alternation& n) {
              std::vector<int> jumps;
              for (std::size_t i = 0; i + 1 < n.branches.size(); ++i) {
                const int split = emit({Op::Split});
                prog_.code[split].a = here();
                gen(*n.branches[i]);
                jumps.push_back(emit({Op::Jump}));
                prog_.code[split].b = here();
              }
              gen(*n.branches.back());
              for (int j : jumps) prog_.code[j].a = here();
            },
            [&](const Quantifier& q) { gen_repeat(q); },
            [&](const Group& g) { gen_group_body(g); },
            [&](const Backreference& b) {
              prog_.has_backrefs = true;
              emit({Op::BackRef, b.group});
            },
            [&](const RecursiveCall& c) {
              prog_.has_calls = true;
              called_[c.group] = true;
              emit({Op::Call, c.group, c.group > prog_.user_groups ? 1 : 0});
            },
            [&](const Anchor&) {},
            [&](const Macro&) { throw CompileError("pattern contains unexpanded macros"); },
        },
        node.value);
  }

  void gen_repeat(const Quantifier& q) {
    for (int i = 0; i < q.min; ++i) gen(*q.child);
    if (q.max == kUnbounded) {
      const bool guard = may_be_empty(*q.child);
      const int loop = emit({Op::Split});
      const int body = here();
      const int reg = guard ? prog_.reg_count++ : -1;
      if (guard) emit({Op::Mark, reg});
      gen(*q.child);
      if (guard) emit({Op::Check, reg});
      emit({Op::Jump, loop});
      const int exit = here();
      prog_.code[loop].a = q.greedy ? body : exit;
      prog_.code[loop].b = q.greedy ? exit : body;
      return;
    }
    std::vector<int> splits;
    for (int i = q.min; i < q.max; ++i) {
      splits.push_back(emit({Op::Split}));
      gen(*q.child);
    }
    const int exit = here();
    for (int s : splits) {
      prog_.code[s].a = q.greedy ? s + 1 : exit;
      prog_.code[s].b = q.greedy ? exit : s + 1;
    }
  }

  int rest_of(int pc) const {
    const auto& mr = prog_.min_rest;
    const Instr& in = prog_.code[pc];
    switch (in.op) {
      case Op::Char: return prog_.sets[in.a].empty() ? kInf : add_sat(1, mr[pc + 1]);
      case Op::Split: return std::min(mr[in.a], mr[in.b]);
      case Op::Jump: return mr[in.a];
      case Op::Save:
      case Op::Mark:
      case Op::Check:
      case Op::BackRef: return mr[pc + 1];
      case Op::Call: return add_sat(mr[prog_.sub_entry[in.a]], mr[pc + 1]);
      case Op::Return:
      case Op::Match: return 0;
    }
    return kInf;
  }

  void compute_min_rest() {
    const int n = here();
    prog_.min_rest.assign(n, kInf);
    for (bool changed = true; changed;) {
      changed = false;
      for (int pc = n - 1; pc >= 0; --pc) {
        const int v = rest_of(pc);
        if (v < prog_.min_rest[pc]) {
          prog_.min_rest[pc] = v;
          changed = true;
        }
      }
    }
  }

  const RegexAst& ast_;
  Program prog_;
  std::map<std::string, int> set_ids_;
  std::vector<bool> called_;
  std::vector<const Node*> group_nodes_;
};

}  // namespace

Program build_program(const syntax::RegexAst& ast, const MatchOptions& options) {
  return Compiler(ast, options).run();
}

}  // namespace linegrade::engine::detail
