#include <doctest.h>

#include "medforge/error.hpp"
#include "medforge/limits.hpp"

using namespace medforge;
using namespace medforge::limits;

namespace {
const HfSet e;
const HfSet one = HfSet::make({e});
const StreamFun zero = StreamFun::table(e);
const StreamFun p = StreamFun::table(e, {{BinStr("1"), one}});
}  // namespace

TEST_CASE("exact equality of presentations") {
  CHECK(streams_equal(zero, StreamFun::table(e)));
  CHECK(streams_equal(zero, StreamFun::levelconst({e})));
  CHECK(streams_equal(StreamFun::table(e, {{BinStr("0"), e}}), zero));
  CHECK_FALSE(streams_equal(zero, p));
  CHECK(first_difference_depth(zero, p) == std::size_t{1});
  // An empty patch changes nothing.
  CHECK(streams_equal(StreamFun::patch(f1_of(p), NodeSet::finite({}), zero), f1_of(p)));
}

TEST_CASE("size of dif") {
  CHECK_FALSE(dif_size(zero, p).infinite);
  CHECK(dif_size(zero, f1_of(zero)).infinite);
  const StreamFun g = StreamFun::patch(f1_of(p), NodeSet::branch_off(p, 3, 1, 0), p);
  CHECK(dif_size(g, f1_of(p)).infinite);
  const StreamFun fin = StreamFun::patch(f1_of(p), NodeSet::finite({BinStr("0110")}), p);
  const DifSize d = dif_size(fin, f1_of(p));
  CHECK_FALSE(d.infinite);
  CHECK(d.bound >= 5);
}

TEST_CASE("track placement") {
  const Track own{p, 0};
  CHECK(place_track(own, p).on_branch);
  const TrackPlacement other = place_track(own, zero);
  CHECK_FALSE(other.on_branch);
  CHECK(other.split_exact);
  CHECK(other.split == 2);
  // Two F1 streams with equal root values agree far beyond the split cap.
  const TrackPlacement far = place_track(Track{f1_of(zero), 0}, f1_of(p));
  CHECK_FALSE(far.on_branch);
  CHECK_FALSE(far.split_exact);
  CHECK(far.split == kMaxSplitBits);
}

TEST_CASE("analysis classes") {
  const StreamFun g = StreamFun::patch(f1_of(p), NodeSet::branch_off(p, 3, 2, 0), p);
  const StreamFun both[] = {g, f1_of(p)};
  const EventualView v = analyze(both);
  REQUIRE(v.tracks.size() == 2);
  CHECK(v.tracks[0].generic());
  // Generic class plus two residues on the branch-off track.
  CHECK(v.classes.size() == 3);
  std::size_t differing = 0;
  for (const auto& c : v.classes) differing += !atoms_equal(c.atoms[0], c.atoms[1]);
  CHECK(differing == 1);
}
