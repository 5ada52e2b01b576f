#pragma once

// Test-side reference implementations, written independently of the library.

#include <cstdint>
#include <vector>

#include "medforge/hf.hpp"

namespace oracle {

/// Ackermann code by direct summation over members; codes must fit 64 bits.
inline std::uint64_t code(const medforge::HfSet& x) {
  std::uint64_t total = 0;
  for (const auto& m : x.members()) total += std::uint64_t{1} << code(m);
  return total;
}

/// The set whose members have the codes of the set bits of n.
inline medforge::HfSet decode(std::uint64_t n) {
  std::vector<medforge::HfSet> items;
  for (std::uint64_t bit = 0; bit < 64; ++bit) {
    if (n >> bit & 1) items.push_back(decode(bit));
  }
  return medforge::HfSet::make(items);
}

}  // namespace oracle
