#pragma once

// Covering observed level-function values by k restriction towers.
//
// Distinct level functions ordered by restriction form a forest (each value
// has exactly one restriction per smaller depth), so a minimum chain cover has
// one chain per maximal element.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "medforge/stream.hpp"
#include "medforge/tree.hpp"
#include "medforge/verdict.hpp"

namespace medforge::cover {

struct CoverResult {
  bool covered = false;
  /// Set when some value is not a level function of its node's depth.
  std::optional<BinStr> bad_node;
  /// Size of a minimum chain cover of the distinct values.
  std::size_t min_chains = 0;
  /// When covered: k towers of the region's maximal depth covering every value.
  std::vector<LevelFun> towers;
  /// When not covered by chains: one node per maximal value (an antichain).
  std::vector<BinStr> antichain_nodes;
};

/// Distinct level functions ordered by restriction: the maximal ones.
std::vector<LevelFun> maximal_values(const std::vector<LevelFun>& values);

CoverResult tower_cover_decide(const std::map<BinStr, HfSet>& region, std::size_t k);

/// Values of f at {ν : η_f↾i ≤ ν, lg ν < horizon}.
std::map<BinStr, HfSet> ball_region(const StreamFun& f, std::size_t i, std::size_t horizon);

/// Can every value of f above η_f↾i be written as F1(f_l)(ν) for one of k
/// streams f_0..f_{k-1}. Refutations are exact; HOLDS needs an exact limit
/// analysis of f.
Verdict tv_2ki(const StreamFun& f, std::size_t k, std::size_t i, std::size_t horizon);

}  // namespace medforge::cover
