#pragma once

// Nodes of the full binary tree and finite level functions on it.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/hf.hpp"

namespace medforge {

/// A finite binary string, i.e. a node of the tree 2^{<ω}.
class BinStr {
 public:
  BinStr() = default;
  /// Accepts only '0'/'1' characters; throws Error(kInvalidArgument) otherwise.
  explicit BinStr(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }
  const std::string& str() const { return bits_; }

  BinStr prefix(std::size_t n) const { return BinStr(bits_.substr(0, n), Unchecked{}); }
  BinStr child(int b) const { return BinStr(bits_ + (b ? '1' : '0'), Unchecked{}); }
  BinStr append(const BinStr& tail) const { return BinStr(bits_ + tail.bits_, Unchecked{}); }

  /// Prefix order: *this ≤ other.
  bool is_prefix_of(const BinStr& other) const {
    return bits_.size() <= other.bits_.size() &&
           other.bits_.compare(0, bits_.size(), bits_) == 0;
  }

  bool operator==(const BinStr&) const = default;
  /// Length-lex order: shorter first, then lexicographic with 0 < 1.
  std::strong_ordering operator<=>(const BinStr& o) const {
    if (auto c = bits_.size() <=> o.bits_.size(); c != 0) return c;
    return bits_.compare(o.bits_) <=> 0;
  }

 private:
  struct Unchecked {};
  BinStr(std::string bits, Unchecked) : bits_(std::move(bits)) {}
  std::string bits_;
};

/// Longest common prefix.
BinStr node_meet(const BinStr& a, const BinStr& b);

/// i-th node in length-lex order (0 → ε, 1 → "0", 2 → "1", 3 → "00", ...).
BinStr node_at_index(std::uint64_t i);
std::uint64_t index_of_node(const BinStr& s);

/// Number of nodes of length < depth, i.e. 2^depth − 1.
inline std::uint64_t nodes_below(std::size_t depth) {
  return (std::uint64_t{1} << depth) - 1;
}

/// All nodes of length < depth in length-lex order.
std::vector<BinStr> nodes_of_depth_below(std::size_t depth);
/// All nodes of length exactly n in lexicographic order.
std::vector<BinStr> nodes_of_length(std::size_t n);

/// s as the HF function {kpair(vN(i), vN(s(i)))}.
HfSet encode_string(const BinStr& s);
/// Inverse of encode_string; nullopt if `v` is not a string code.
std::optional<BinStr> try_decode_string(const HfSet& v);
/// Throws Error(kMalformed) if `v` is not a string code.
BinStr decode_string(const HfSet& v);

/// An element of F_n*: a total map from 2^{<depth} to HF values. Values are
/// stored in length-lex node order.
class LevelFun {
 public:
  LevelFun() = default;
  LevelFun(std::size_t depth, std::vector<HfSet> values);
  static LevelFun constant(std::size_t depth, const HfSet& v);

  std::size_t depth() const { return depth_; }
  const HfSet& at(const BinStr& node) const;
  const HfSet& at_index(std::uint64_t i) const { return values_[i]; }
  const std::vector<HfSet>& values() const { return values_; }

  /// f↾2^{<m} for m ≤ depth.
  LevelFun restrict(std::size_t m) const;
  /// True iff *this is a restriction of `other`.
  bool restricts(const LevelFun& other) const;

  bool operator==(const LevelFun&) const = default;

 private:
  std::size_t depth_ = 0;
  std::vector<HfSet> values_;
};

/// {kpair(encode_string(ρ), L(ρ)) : ρ ∈ 2^{<depth}}.
HfSet encode_levelfun(const LevelFun& l);

/// The depth-n level function encoded by `v`, or nullopt if `v` is not one.
std::optional<LevelFun> decode_levelfun(const HfSet& v, std::size_t n);
bool is_levelfun_of_depth(const HfSet& v, std::size_t n);
/// The unique n for which `v` encodes a depth-n level function, if any.
std::optional<std::size_t> levelfun_depth(const HfSet& v);

}  // namespace medforge
