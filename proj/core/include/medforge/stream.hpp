#pragma once

// Finitely presented elements of F* = (2^{<ω} → H(ℵ0)).
//
// A StreamFun is a closed combinator term:
//   table(default; exceptions)      finite exception map over a default value
//   levelconst(v0, ..., v_{p-1})    value at ρ is v_{lg ρ mod p}
//   f1(p)                           value at ρ is the encoding of p↾2^{<lg ρ}
//   patch(base; w; override)        override on the node set w, base elsewhere
// Node sets are either finite lists or branch-off families hanging from the
// branch code of a source stream. Terms are immutable and freely shared.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "medforge/hf.hpp"
#include "medforge/tree.hpp"

namespace medforge {

namespace detail {
struct StreamNode;
struct NodeSetNode;
}  // namespace detail

enum class StreamKind { kTable, kLevelConst, kF1Of, kPatch };
enum class NodeSetKind { kFinite, kBranchOff };

class NodeSet;

class StreamFun {
 public:
  static StreamFun table(HfSet default_value, std::map<BinStr, HfSet> exceptions = {});
  static StreamFun levelconst(std::vector<HfSet> schedule);
  static StreamFun f1_of(const StreamFun& p);
  static StreamFun patch(const StreamFun& base, const NodeSet& w, const StreamFun& override_with);

  StreamKind kind() const;

  // table
  const HfSet& table_default() const;
  const std::map<BinStr, HfSet>& table_exceptions() const;
  // levelconst
  const std::vector<HfSet>& schedule() const;
  // f1
  const StreamFun& f1_source() const;
  // patch
  const StreamFun& patch_base() const;
  const NodeSet& patch_set() const;
  const StreamFun& patch_override() const;

  /// Node identity of the term; equal identities imply equal streams.
  const void* identity() const { return node_.get(); }

  const detail::StreamNode& node() const { return *node_; }

 private:
  explicit StreamFun(std::shared_ptr<const detail::StreamNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::StreamNode> node_;
};

class NodeSet {
 public:
  static NodeSet finite(std::vector<BinStr> nodes);
  /// ν_n = (η↾n)⌢(1−η(n))⌢0^tail for n = start, start+step, ... where η is
  /// the branch code of `source`. step ≥ 1.
  static NodeSet branch_off(const StreamFun& source, std::size_t start, std::size_t step,
                            std::size_t tail);

  NodeSetKind kind() const;
  /// Sorted (length-lex), duplicate-free.
  const std::vector<BinStr>& finite_nodes() const;
  const StreamFun& source() const;
  std::size_t start() const;
  std::size_t step() const;
  std::size_t tail() const;

  bool contains(const BinStr& node) const;
  /// Members of length < depth, length-lex.
  std::vector<BinStr> members_below(std::size_t depth) const;

 private:
  explicit NodeSet(std::shared_ptr<const detail::NodeSetNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::NodeSetNode> node_;
};

/// Value of `f` at `node`.
HfSet stream_eval(const StreamFun& f, const BinStr& node);

/// Convenience alias for StreamFun::f1_of.
inline StreamFun f1_of(const StreamFun& f) { return StreamFun::f1_of(f); }

/// The level function f↾2^{<n}.
LevelFun restrict(const StreamFun& f, std::size_t n);

/// Encoding of f↾2^{<n}; this is the value of f1_of(f) at every node of length n.
HfSet truncation_code(const StreamFun& f, std::size_t n);

struct EqDif {
  std::vector<BinStr> eq;
  std::vector<BinStr> dif;
};

/// Partition of 2^{<horizon} by pointwise equality of f and g.
EqDif eq_dif_nodes(const StreamFun& f, const StreamFun& g, std::size_t horizon);

}  // namespace medforge
