#pragma once

// Exact limit queries over stream presentations.
//
// Above a computable level threshold every node of 2^{<ω} falls into one of
// finitely many classes: the "generic" nodes (off every branch-off family in
// play) split by level residue, and the nodes ν_m of each branch-off track
// split by residue of m. Inside a class each stream's value is described by
// one atom, either a constant HF value or the truncation p↾2^{<lg ν} of some
// stream p, and every equality and level-function test between atoms is
// constant across the class. Infinitary questions ("is dif(a,b) infinite",
// "does every branch ball contain ...") then reduce to inspecting the classes
// plus an explicit scan of the finitely many nodes below the threshold.
//
// Anything outside this fragment raises UnsupportedQuery.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "medforge/hf.hpp"
#include "medforge/stream.hpp"

namespace medforge::limits {

/// Largest level scanned explicitly by an exact query.
inline constexpr std::size_t kMaxScanDepth = 12;
/// Largest prefix of two branch codes compared when locating their split.
inline constexpr std::size_t kMaxSplitBits = 4096;

struct Atom {
  enum class Kind { kConst, kTower };
  Kind kind = Kind::kConst;
  HfSet value;                      // kConst
  std::optional<StreamFun> tower;   // kTower

  static Atom constant(HfSet v) { return Atom{Kind::kConst, std::move(v), std::nullopt}; }
  static Atom truncations(StreamFun p) { return Atom{Kind::kTower, HfSet(), std::move(p)}; }

  /// Value at a node of length `level`.
  HfSet at_level(std::size_t level) const;
  /// Is the value at length `level` a level function of that depth.
  bool is_levelfun_at(std::size_t level) const;
};

/// A track: either the generic nodes (no source) or the branch-off nodes
/// ν_m = (η↾m)⌢(1−η(m))⌢0^tail of a source's branch code, for every m ≥ 0.
struct Track {
  std::optional<StreamFun> source;
  std::size_t tail = 0;

  bool generic() const { return !source.has_value(); }
  /// Length of the node with index `index` on this track.
  std::size_t level_of(std::size_t index) const { return generic() ? index : index + 1 + tail; }
};

struct EventualClass {
  std::size_t track = 0;
  std::size_t residue = 0;
  std::size_t period = 1;
  std::size_t first_index = 0;  // smallest index in the class
  std::vector<Atom> atoms;      // one per analysed stream
};

struct EventualView {
  std::size_t level_threshold = 0;
  std::vector<Track> tracks;
  std::vector<EventualClass> classes;
};

/// Classes for `streams`, over the branch-off tracks occurring in their terms
/// plus `extra_tracks`.
EventualView analyze(std::span<const StreamFun> streams, std::span<const Track> extra_tracks = {});

bool atoms_equal(const Atom& a, const Atom& b);

/// Exact stream equality.
bool streams_equal(const StreamFun& a, const StreamFun& b);

struct DifSize {
  bool infinite = false;
  /// When finite: dif(a,b) ⊆ 2^{<bound}.
  std::size_t bound = 0;
};

DifSize dif_size(const StreamFun& a, const StreamFun& b);

/// Shortest length of a node where a and b differ; nullopt if equal.
std::optional<std::size_t> first_difference_depth(const StreamFun& a, const StreamFun& b);

/// Relationship between a track and a branch code η_f.
struct TrackPlacement {
  /// The track's source has branch code η_f: ν_m lies in every ball η_f↾n with n ≤ m.
  bool on_branch = false;
  /// Otherwise: length of η_src ∩ η_f. Track nodes with m > split all meet η_f in exactly this.
  std::size_t split = 0;
  /// False when the codes agree on the first kMaxSplitBits bits; `split` is
  /// then only a lower bound.
  bool split_exact = true;
};

TrackPlacement place_track(const Track& t, const StreamFun& f);

}  // namespace medforge::limits
