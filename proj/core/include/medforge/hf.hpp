#pragma once

// Hereditarily finite sets.
//
// Every HfSet is hash-consed: structurally equal sets share one immutable
// node, so equality is pointer equality and values are cheap to copy.
// Members are kept in canonical order, i.e. the numeric order of their
// Ackermann codes, which is computed structurally without materialising
// the (often astronomically large) codes themselves.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace medforge {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {
struct HfNode;
}

class HfSet {
 public:
  /// The empty set.
  HfSet();

  /// Canonical set whose members are exactly the distinct `items`.
  static HfSet make(std::span<const HfSet> items);
  static HfSet make(std::initializer_list<HfSet> items) {
    return make(std::span<const HfSet>(items.begin(), items.size()));
  }

  std::span<const HfSet> members() const;
  std::size_t size() const { return members().size(); }
  bool empty() const { return members().empty(); }
  bool contains(const HfSet& x) const;
  bool subset_of(const HfSet& other) const;

  /// von Neumann rank; rank(x) < rank(y) implies code(x) < code(y).
  std::uint32_t rank() const;
  std::size_t hash() const;
  /// Ackermann code when it is below 2^64.
  std::optional<std::uint64_t> small_code() const;

  bool operator==(const HfSet& o) const { return node_ == o.node_; }
  /// Numeric order of Ackermann codes.
  std::strong_ordering operator<=>(const HfSet& o) const;

  const void* identity() const { return node_; }

 private:
  explicit HfSet(const detail::HfNode* n) : node_(n) {}
  const detail::HfNode* node_;
};

HfSet hf_make(std::span<const HfSet> items);

/// Current big-integer budget in bits (MEDFORGE_BIGINT_BUDGET, default 65536).
std::size_t bigint_budget_bits();
/// Override the budget for this process; 0 restores the environment default.
void set_bigint_budget_bits(std::size_t bits);

/// Ackermann code. Throws Error(kBudget) if the code needs more bits than the
/// configured budget.
BigInt ack_code(const HfSet& x);

/// Code of `x` if it is strictly below 2^bits, nullopt otherwise. Never
/// materialises anything larger than 2^bits.
std::optional<BigInt> ack_code_below(const HfSet& x, std::size_t bits);

HfSet ack_decode(const BigInt& n);

/// von Neumann natural: 0 = {}, n+1 = n ∪ {n}.
HfSet von_neumann(std::size_t n);
/// Inverse of von_neumann, nullopt if `x` is not a finite ordinal.
std::optional<std::size_t> as_von_neumann(const HfSet& x);

/// Kuratowski pair {{a},{a,b}}.
HfSet kpair(const HfSet& a, const HfSet& b);
/// Inverse of kpair; nullopt if `p` is not a pair.
std::optional<std::pair<HfSet, HfSet>> try_kunpair(const HfSet& p);
/// Inverse of kpair; throws Error(kMalformed) on a non-pair.
std::pair<HfSet, HfSet> kunpair(const HfSet& p);

/// Canonical brace literal, members in code order: {} | {a,b,...}.
std::string to_literal(const HfSet& x);
/// Parses `{}` | `{lit,...}` | `#n`. Whitespace is allowed between tokens.
HfSet parse_hf(std::string_view text);

}  // namespace medforge

template <>
struct std::hash<medforge::HfSet> {
  std::size_t operator()(const medforge::HfSet& x) const noexcept {
    return x.hash();
  }
};
