#pragma once

// The branch code B : F* → 2^ω.
//
// B(f) is the concatenation, over nodes in length-lex order, of the
// self-delimiting code of the Ackermann code of f at that node. Each node
// contributes at least one bit, so bit t depends only on nodes of index ≤ t.
// Bits are produced lazily: a value whose code is too large to matter within
// the requested prefix only contributes its leading zeros.

#include <cstddef>
#include <cstdint>
#include <string>

#include "medforge/hf.hpp"
#include "medforge/stream.hpp"
#include "medforge/tree.hpp"

namespace medforge {

/// 0^{L−1} followed by the L-bit binary form of n+1.
std::string prefix_code(const BigInt& n);

/// Records the largest node index evaluated by a branch computation.
struct QueryCounter {
  std::uint64_t evaluations = 0;
  std::uint64_t max_index = 0;
};

/// First t bits of B(f) as an ASCII 0/1 string.
std::string branch_bits(const StreamFun& f, std::size_t t, QueryCounter* counter = nullptr);

/// η_f↾n as a node.
BinStr branch_node(const StreamFun& f, std::size_t n);

/// Length of the longest common prefix of η_a and η_b, searching at most
/// `limit` bits; nullopt if they agree on all of them.
std::optional<std::size_t> branch_split(const StreamFun& a, const StreamFun& b, std::size_t limit);

}  // namespace medforge
