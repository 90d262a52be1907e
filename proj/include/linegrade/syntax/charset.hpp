#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>

namespace linegrade::syntax {

/// Set of bytes. Patterns and answers are matched byte-wise.
class CharSet {
 public:
  CharSet() = default;

  static CharSet single(unsigned char c) {
    CharSet s;
    s.add(c);
    return s;
  }
  static CharSet range(unsigned char lo, unsigned char hi) {
    CharSet s;
    s.add_range(lo, hi);
    return s;
  }
  static CharSet any_but_newline() {
    CharSet s = single('\n');
    return s.complemented();
  }
  static CharSet digit() { return range('0', '9'); }
  static CharSet word() {
    CharSet s = range('a', 'z');
    s.add_range('A', 'Z');
    s.add_range('0', '9');
    s.add('_');
    return s;
  }
  static CharSet space() {
    CharSet s;
    for (unsigned char c : {' ', '\t', '\n', '\r', '\f', '\v'}) s.add(c);
    return s;
  }

  void add(unsigned char c) { bits_.set(c); }
  void add_range(unsigned char lo, unsigned char hi) {
    for (unsigned c = lo; c <= hi; ++c) bits_.set(c);
  }
  void merge(const CharSet& other) { bits_ |= other.bits_; }

  bool contains(unsigned char c) const { return bits_.test(c); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  CharSet complemented() const {
    CharSet s;
    s.bits_ = ~bits_;
    return s;
  }

  /// Adds the other-case counterpart of every ASCII letter in the set.
  CharSet case_folded() const;

  /// Smallest member under `generation_rank`, if any.
  std::optional<unsigned char> first_by_rank() const;

  /// Compact source-like rendering, e.g. `[a-z_]`.
  std::string describe() const;

  friend bool operator==(const CharSet&, const CharSet&) = default;

 private:
  std::bitset<256> bits_;
};

/// Order used whenever the engine has to pick a character on its own
/// (completions, shortest witnesses): printable ASCII in byte order, space
/// first, then control characters, then bytes >= 0x7f.
const std::array<unsigned char, 256>& generation_order();
int generation_rank(unsigned char c);

/// Compares two strings character-wise under `generation_rank`.
bool generation_less(const std::string& a, const std::string& b);

}  // namespace linegrade::syntax
