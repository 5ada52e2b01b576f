#pragma once

#include <optional>
#include <string>

#include "medforge/limits.hpp"
#include "medforge/stream.hpp"
#include "medforge/tree.hpp"

namespace medforge::construction::detail {

inline std::string quoted(const BinStr& s) { return '"' + s.str() + '"'; }

/// p when `g` is F1(p), or a patch whose base chain ends in F1(p).
std::optional<StreamFun> core_source(const StreamFun& g);

/// ν_m of a branch-off track: (η↾m)⌢(1−η(m))⌢0^tail.
BinStr track_node(const limits::Track& t, std::size_t m);

}  // namespace medforge::construction::detail
