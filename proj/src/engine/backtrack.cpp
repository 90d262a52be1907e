#include "engine/backtrack.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <unordered_set>
#include <variant>

#include "linegrade/errors.hpp"

namespace linegrade::engine::detail {

namespace {

struct Frame {
  int return_pc = 0;
  std::vector<int> slots;
  std::vector<int> regs;
  int rest = 0;  // min_rest of every pending return address
  std::size_t depth = 0;
  int stack_id = 0;
  bool keep_captures = false;
  std::shared_ptr<const Frame> parent;
};

struct Thread {
  int pc = 0;
  std::size_t pos = 0;
  std::vector<int> slots;
  std::vector<int> regs;
  std::shared_ptr<const Frame> frame;
};

struct MemoKey {
  int pc;
  std::size_t pos;
  int stack_id;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.pc) * 0x9E3779B97F4A7C15ull;
    h ^= k.pos + 0x9E3779B9 + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(k.stack_id) + 0x7F4A7C15 + (h << 6) + (h >> 2);
    return h;
  }
};

// Popping a marker means every continuation of its state has failed.
struct Marker {
  MemoKey key;
};

using Entry = std::variant<Thread, Marker>;

unsigned char fold(unsigned char c) { return static_cast<unsigned char>(std::tolower(c)); }

class Search {
 public:
  Search(const Program& prog, const MatchOptions& options, std::string_view fixed,
         std::size_t budget, SearchMode mode)
      : prog_(prog),
        options_(options),
        fixed_(fixed),
        limit_(fixed.size() + budget),
        mode_(mode),
        memo_(!prog.has_backrefs) {
    generated_.resize(budget);
  }

  SearchOutcome run() {
    if (prog_.min_rest[prog_.start] >= kInf) return out_;
    Thread init;
    init.pc = prog_.start;
    init.slots.assign(static_cast<std::size_t>(prog_.slot_count()), -1);
    init.regs.assign(static_cast<std::size_t>(prog_.reg_count), -1);
    stack_.emplace_back(std::move(init));

    while (!stack_.empty()) {
      Entry entry = std::move(stack_.back());
      stack_.pop_back();
      if (auto* marker = std::get_if<Marker>(&entry)) {
        failed_.insert(marker->key);
        continue;
      }
      if (advance(std::get<Thread>(entry))) return std::move(out_);
    }
    return std::move(out_);
  }

 private:
  std::size_t n() const { return fixed_.size(); }

  unsigned char text_at(std::size_t i) const {
    return i < n() ? static_cast<unsigned char>(fixed_[i])
                   : static_cast<unsigned char>(generated_[i - n()]);
  }

  int lower_bound(const Thread& t, int pc) const {
    return add_sat(prog_.min_rest[pc], t.frame ? t.frame->rest : 0);
  }

  bool pruned(const Thread& t, int pc) const {
    const int lb = lower_bound(t, pc);
    return lb >= kInf || t.pos + static_cast<std::size_t>(lb) > limit_;
  }

  int intern(int parent, int return_pc) {
    auto [it, inserted] = stack_ids_.try_emplace({parent, return_pc}, next_stack_id_);
    if (inserted) ++next_stack_id_;
    return it->second;
  }

  // Produces the character at t.pos when it lies beyond the fixed text.
  // Returns false when the path ends here (collected, or reach reported).
  enum class Gen { Continue, Fail, Stop };
  Gen generate(std::size_t pos, unsigned char c, const syntax::CharSet* set) {
    switch (mode_) {
      case SearchMode::MaxReach:
        out_.reach = n();
        return Gen::Stop;
      case SearchMode::CollectFirst:
        if (set)
          out_.first.merge(*set);
        else
          out_.first.add(c);
        return Gen::Fail;
      case SearchMode::Exists:
        generated_[pos - n()] = static_cast<char>(c);
        return Gen::Continue;
    }
    return Gen::Fail;
  }

  // Runs one thread until it fails (false) or the whole search is over (true).
  bool advance(Thread t) {
    for (;;) {
      if (++steps_ > options_.step_budget) throw BudgetExceeded(options_.step_budget);
      if (pruned(t, t.pc)) return false;
      const Instr& in = prog_.code[t.pc];
      switch (in.op) {
        case Op::Char: {
          if (memo_) {
            const MemoKey key{t.pc, t.pos, t.frame ? t.frame->stack_id : 0};
            if (failed_.count(key)) return false;
            stack_.emplace_back(Marker{key});
          }
          const auto& set = prog_.sets[in.a];
          if (t.pos < n()) {
            if (!set.contains(static_cast<unsigned char>(fixed_[t.pos]))) return false;
          } else {
            switch (generate(t.pos, prog_.first_char[in.a], &set)) {
              case Gen::Fail: return false;
              case Gen::Stop: return true;
              case Gen::Continue: break;
            }
          }
          ++t.pos;
          ++t.pc;
          if (mode_ == SearchMode::MaxReach && t.pos > out_.reach) out_.reach = t.pos;
          break;
        }
        case Op::Split: {
          int first = in.a, second = in.b;
          if (t.pos >= n() && mode_ == SearchMode::Exists &&
              prog_.min_rest[second] < prog_.min_rest[first])
            std::swap(first, second);
          if (!pruned(t, second)) {
            Thread alt = t;
            alt.pc = second;
            stack_.emplace_back(std::move(alt));
          }
          t.pc = first;
          break;
        }
        case Op::Jump: t.pc = in.a; break;
        case Op::Save:
          t.slots[in.a] = static_cast<int>(t.pos);
          ++t.pc;
          break;
        case Op::Mark:
          t.regs[in.a] = static_cast<int>(t.pos);
          ++t.pc;
          break;
        case Op::Check:
          if (t.regs[in.a] == static_cast<int>(t.pos)) return false;
          ++t.pc;
          break;
        case Op::BackRef: {
          const int s = t.slots[2 * in.a], e = t.slots[2 * in.a + 1];
          if (s < 0 || e < 0) return false;
          const auto len = static_cast<std::size_t>(e - s);
          if (t.pos + len > limit_) return false;
          for (std::size_t i = 0; i < len; ++i) {
            const std::size_t at = t.pos + i;
            const unsigned char want = text_at(static_cast<std::size_t>(s) + i);
            if (at < n()) {
              const auto got = static_cast<unsigned char>(fixed_[at]);
              if (got != want && !(prog_.case_insensitive && fold(got) == fold(want)))
                return false;
              if (mode_ == SearchMode::MaxReach && at + 1 > out_.reach) out_.reach = at + 1;
            } else {
              switch (generate(at, want, nullptr)) {
                case Gen::Fail: return false;
                case Gen::Stop: return true;
                case Gen::Continue: break;
              }
            }
          }
          t.pos += len;
          ++t.pc;
          break;
        }
        case Op::Call: {
          const std::size_t depth = t.frame ? t.frame->depth + 1 : 1;
          if (depth > options_.recursion_limit) {
            // Nesting the student actually typed is an error; nesting that
            // would only be generated is simply not explored.
            if (t.pos < n()) throw RecursionLimit(options_.recursion_limit);
            return false;
          }
          auto frame = std::make_shared<Frame>();
          frame->return_pc = t.pc + 1;
          frame->slots = t.slots;
          frame->regs = t.regs;
          frame->rest = add_sat(prog_.min_rest[t.pc + 1], t.frame ? t.frame->rest : 0);
          frame->depth = depth;
          frame->keep_captures = in.b != 0;
          frame->stack_id = intern(t.frame ? t.frame->stack_id : 0, t.pc + 1);
          frame->parent = t.frame;
          t.frame = std::move(frame);
          t.pc = prog_.sub_entry[in.a];
          break;
        }
        case Op::Return: {
          const auto frame = t.frame;
          if (!frame->keep_captures) t.slots = frame->slots;
          t.regs = frame->regs;
          t.pc = frame->return_pc;
          t.frame = frame->parent;
          break;
        }
        case Op::Match: {
          if (t.pos < n()) return false;
          if (mode_ == SearchMode::Exists) {
            out_.success = true;
            out_.slots = std::move(t.slots);
            out_.generated = generated_.substr(0, t.pos - n());
            return true;
          }
          if (mode_ == SearchMode::MaxReach) {
            out_.reach = n();
            return true;
          }
          return false;
        }
      }
    }
  }

  const Program& prog_;
  const MatchOptions& options_;
  std::string_view fixed_;
  std::size_t limit_;
  SearchMode mode_;
  bool memo_;
  std::string generated_;
  std::vector<Entry> stack_;
  std::unordered_set<MemoKey, MemoHash> failed_;
  std::map<std::pair<int, int>, int> stack_ids_;
  int next_stack_id_ = 1;
  std::size_t steps_ = 0;
  SearchOutcome out_;
};

}  // namespace

SearchOutcome Backtracker::run(std::string_view fixed, std::size_t budget, SearchMode mode) const {
  return Search(prog_, options_, fixed, budget, mode).run();
}

}  // namespace linegrade::engine::detail
