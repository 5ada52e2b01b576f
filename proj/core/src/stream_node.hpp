#pragma once

#include <mutex>
#include <unordered_map>
#include <variant>

#include "medforge/stream.hpp"

namespace medforge::detail {

struct TableData {
  HfSet default_value;
  std::map<BinStr, HfSet> exceptions;
  std::size_t max_exception_length = 0;  // 1 + longest exception, 0 if none
};
struct LevelConstData {
  std::vector<HfSet> schedule;
};
struct F1Data {
  StreamFun source;
};
struct PatchData {
  StreamFun base;
  NodeSet w;
  StreamFun override_with;
};

// Memo tables. Observationally pure: they only ever cache values that are
// functions of the immutable term.
struct StreamCache {
  std::mutex mu;
  std::unordered_map<std::size_t, HfSet> truncation_codes;
  // Bits of B(f) contributed by nodes [0, eta_next_node).
  std::string eta_bits;
  std::uint64_t eta_next_node = 0;
};

struct StreamNode {
  std::variant<TableData, LevelConstData, F1Data, PatchData> data;
  mutable StreamCache cache;
};

struct FiniteData {
  std::vector<BinStr> nodes;
};
struct BranchOffData {
  StreamFun source;
  std::size_t start;
  std::size_t step;
  std::size_t tail;
};

struct NodeSetNode {
  std::variant<FiniteData, BranchOffData> data;
};

}  // namespace medforge::detail
