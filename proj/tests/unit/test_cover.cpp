#include <doctest.h>

#include <random>

#include "medforge/branch.hpp"
#include "medforge/cover.hpp"
#include "medforge/text.hpp"

using namespace medforge;
using namespace medforge::cover;

namespace {

const HfSet e;
const HfSet one = HfSet::make({e});

std::vector<LevelFun> all_towers(std::size_t depth) {
  std::vector<LevelFun> out;
  const std::size_t slots = static_cast<std::size_t>(nodes_below(depth));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
    std::vector<HfSet> values;
    for (std::size_t i = 0; i < slots; ++i) values.push_back(mask >> i & 1 ? one : e);
    out.emplace_back(depth, values);
  }
  return out;
}

// Reference: some k towers of the maximal depth (over {∅,{∅}}) have every
// observed value among their restrictions.
bool towers_exist(const std::vector<LevelFun>& observed, std::size_t k) {
  if (observed.empty()) return true;
  if (k == 0) return false;
  std::size_t depth = 0;
  for (const auto& l : observed) depth = std::max(depth, l.depth());
  const std::vector<LevelFun> towers = all_towers(depth);
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    bool ok = true;
    for (const auto& l : observed) {
      bool hit = false;
      for (auto t : pick) hit = hit || l.restricts(towers[t]);
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < k && ++pick[i] == towers.size()) {
      pick[i] = 0;
      ++i;
    }
    if (i == k) return false;
  }
}

std::map<BinStr, HfSet> region_of(const std::vector<LevelFun>& vals) {
  std::map<BinStr, HfSet> region;
  std::vector<std::size_t> used(8, 0);
  for (const auto& l : vals) region.emplace(nodes_of_length(l.depth())[used[l.depth()]++], encode_levelfun(l));
  return region;
}

}  // namespace

TEST_CASE("single planted tower") {
  const LevelFun top(3, {e, one, e, one, e, e, one});
  const CoverResult r = tower_cover_decide(region_of({top.restrict(1), top.restrict(2), top}), 1);
  CHECK(r.covered);
  CHECK(r.min_chains == 1);
  REQUIRE(r.towers.size() == 1);
  CHECK(r.towers[0] == top);
}

TEST_CASE("two depth-1 values need two towers") {
  const auto region = region_of({LevelFun(1, {e}), LevelFun(1, {one})});
  const CoverResult r = tower_cover_decide(region, 1);
  CHECK_FALSE(r.covered);
  CHECK(r.antichain_nodes.size() == 2);
  CHECK(tower_cover_decide(region, 2).covered);
}

TEST_CASE("three-element antichain over a shared ancestor") {
  const auto region = region_of({LevelFun(1, {e}), LevelFun(2, {e, e, e}), LevelFun(2, {e, one, e}),
                                 LevelFun(2, {e, e, one})});
  CHECK_FALSE(tower_cover_decide(region, 2).covered);
  const CoverResult r = tower_cover_decide(region, 3);
  CHECK(r.covered);
  CHECK(r.min_chains == 3);
}

TEST_CASE("values that are not level functions") {
  std::map<BinStr, HfSet> region = {{BinStr("0"), encode_levelfun(LevelFun(1, {e}))}, {BinStr("01"), one}};
  const CoverResult r = tower_cover_decide(region, 3);
  CHECK_FALSE(r.covered);
  REQUIRE(r.bad_node.has_value());
  CHECK(*r.bad_node == BinStr("01"));
}

TEST_CASE("chain cover equals explicit tower search on random small regions") {
  std::mt19937_64 rng(11);
  std::vector<LevelFun> pool;
  for (std::size_t d = 1; d <= 2; ++d) {
    for (auto& l : all_towers(d)) pool.push_back(l);
  }
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<LevelFun> vals;
    for (std::size_t j = 0, n = 1 + rng() % 6; j < n; ++j) {
      const LevelFun& l = pool[rng() % pool.size()];
      if (std::find(vals.begin(), vals.end(), l) == vals.end()) vals.push_back(l);
    }
    std::size_t per_depth[3] = {0, 0, 0};
    bool fits = true;
    for (const auto& l : vals) fits = fits && ++per_depth[l.depth()] <= (std::size_t{1} << l.depth());
    if (!fits) continue;
    const auto region = region_of(vals);
    for (std::size_t k = 0; k <= 3; ++k) {
      CAPTURE(region_to_text(region));
      CAPTURE(k);
      const CoverResult r = tower_cover_decide(region, k);
      CHECK(r.covered == towers_exist(vals, k));
      if (r.covered) {
        CHECK(r.towers.size() == k);
        for (const auto& l : vals) {
          bool hit = false;
          for (const auto& t : r.towers) hit = hit || l.restricts(t);
          CHECK(hit);
        }
      }
    }
  }
}

TEST_CASE("tower count on a single F1 stream") {
  const StreamFun p = StreamFun::table(e, {{BinStr("1"), one}});
  CHECK(tv_2ki(f1_of(p), 1, 0, 6).is_holds());
  CHECK(tv_2ki(f1_of(p), 2, 3, 6).is_holds());
  CHECK_THROWS(tv_2ki(f1_of(p), 1, 6, 6));
}

TEST_CASE("two planted towers") {
  const StreamFun t0 = StreamFun::table(e);
  const StreamFun t1 = StreamFun::table(e, {{BinStr("0"), one}});
  const StreamFun two = StreamFun::patch(f1_of(t0), NodeSet::branch_off(f1_of(t0), 2, 1, 0), f1_of(t1));
  const Verdict k1 = tv_2ki(two, 1, 0, 6);
  CHECK(k1.is_refuted());
  CHECK_FALSE(k1.witness.empty());
  CHECK(tv_2ki(two, 2, 0, 6).is_holds());
  // Refutations persist at larger horizons.
  CHECK(tv_2ki(two, 1, 0, 8).is_refuted());
}

TEST_CASE("antichain growing past every k up to four") {
  const StreamFun t0 = StreamFun::table(e);
  StreamFun f = f1_of(t0);
  for (std::size_t tail = 0; tail < 4; ++tail) {
    const StreamFun ti = StreamFun::table(von_neumann(tail + 1));
    f = StreamFun::patch(f, NodeSet::branch_off(f1_of(t0), 2, 1, tail), f1_of(ti));
  }
  for (std::size_t k = 1; k <= 4; ++k) {
    CAPTURE(k);
    CHECK(tv_2ki(f, k, 0, 7).is_refuted());
  }
}

TEST_CASE("ball regions") {
  const StreamFun p = StreamFun::table(e, {{BinStr("1"), one}});
  const auto region = ball_region(p, 2, 5);
  const BinStr root = branch_node(p, 2);
  for (const auto& [node, value] : region) CHECK(root.is_prefix_of(node));
  CHECK(region.size() == 7);
}
