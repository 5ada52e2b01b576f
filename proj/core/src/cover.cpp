#include "medforge/cover.hpp"

#include <algorithm>
#include <unordered_map>

#include "medforge/branch.hpp"
#include "medforge/error.hpp"
#include "medforge/limits.hpp"

namespace medforge::cover {

namespace {

LevelFun pad_to(const LevelFun& l, std::size_t depth) {
  std::vector<HfSet> values = l.values();
  values.resize(nodes_below(depth));
  return LevelFun(depth, std::move(values));
}

std::string quoted(const BinStr& s) { return '"' + s.str() + '"'; }

}  // namespace

std::vector<LevelFun> maximal_values(const std::vector<LevelFun>& values) {
  std::vector<LevelFun> out;
  for (std::size_t a = 0; a < values.size(); ++a) {
    bool maximal = true;
    for (std::size_t b = 0; b < values.size() && maximal; ++b) {
      if (values[b].depth() > values[a].depth() && values[a].restricts(values[b])) maximal = false;
    }
    if (maximal && std::find(out.begin(), out.end(), values[a]) == out.end()) out.push_back(values[a]);
  }
  return out;
}

CoverResult tower_cover_decide(const std::map<BinStr, HfSet>& region, std::size_t k) {
  CoverResult out;
  std::vector<LevelFun> distinct;
  std::vector<BinStr> first_node;
  std::unordered_map<HfSet, std::size_t> seen;  // value → index into distinct
  std::size_t max_depth = 0;
  for (const auto& [node, value] : region) {
    max_depth = std::max(max_depth, node.size());
    if (auto it = seen.find(value); it != seen.end() && distinct[it->second].depth() == node.size()) continue;
    auto lf = decode_levelfun(value, node.size());
    if (!lf) {
      out.bad_node = node;
      return out;
    }
    seen.emplace(value, distinct.size());
    distinct.push_back(std::move(*lf));
    first_node.push_back(node);
  }
  const std::vector<LevelFun> maxima = maximal_values(distinct);
  out.min_chains = maxima.size();
  out.covered = maxima.size() <= k;
  if (out.covered) {
    for (const auto& m : maxima) out.towers.push_back(pad_to(m, max_depth));
    while (out.towers.size() < k) out.towers.push_back(LevelFun::constant(max_depth, HfSet()));
  } else {
    for (const auto& m : maxima) {
      const auto it = std::find(distinct.begin(), distinct.end(), m);
      out.antichain_nodes.push_back(first_node[static_cast<std::size_t>(it - distinct.begin())]);
    }
  }
  return out;
}

std::map<BinStr, HfSet> ball_region(const StreamFun& f, std::size_t i, std::size_t horizon) {
  std::map<BinStr, HfSet> out;
  const BinStr root = branch_node(f, i);
  for (std::size_t len = i; len < horizon; ++len) {
    for (const auto& tail : nodes_of_length(len - i)) {
      const BinStr node = root.append(tail);
      out.emplace(node, stream_eval(f, node));
    }
  }
  return out;
}

namespace {

std::string refutation(const CoverResult& r, std::size_t k) {
  if (r.bad_node) return "value at " + quoted(*r.bad_node) + " is not a level function";
  std::string out = std::to_string(k + 1) + " values need separate towers:";
  for (std::size_t j = 0; j < r.antichain_nodes.size() && j <= k; ++j) out += ' ' + quoted(r.antichain_nodes[j]);
  return out;
}

struct ExactAnswer {
  bool holds = false;
  std::string reason;  // when !holds
};

ExactAnswer decide_exactly(const StreamFun& f, std::size_t k, std::size_t i) {
  const StreamFun fs[] = {f};
  const limits::EventualView view = limits::analyze(fs);
  const std::size_t threshold = view.level_threshold;
  if (threshold > limits::kMaxScanDepth) {
    throw UnsupportedQuery("explicit scan to depth " + std::to_string(threshold));
  }
  const BinStr root = branch_node(f, i);
  std::vector<StreamFun> towers;
  std::vector<BinStr> extra_nodes;
  for (const auto& c : view.classes) {
    const limits::Track& t = view.tracks[c.track];
    bool meets = true;
    if (!t.generic()) {
      const limits::TrackPlacement pl = limits::place_track(t, f);
      if (!pl.on_branch && pl.split < i) {
        meets = false;
        // The node ν_split can still reach into the ball through its tail.
        const std::size_t m = pl.split;
        if (pl.split_exact && m >= c.first_index && m % c.period == c.residue) {
          const std::string bits = branch_bits(*t.source, m + 1);
          BinStr node = BinStr(bits.substr(0, m)).child(bits[m] == '1' ? 0 : 1);
          for (std::size_t z = 0; z < t.tail; ++z) node = node.child(0);
          if (root.is_prefix_of(node)) extra_nodes.push_back(node);
        }
      }
    }
    if (!meets) continue;
    const limits::Atom& a = c.atoms[0];
    if (a.kind == limits::Atom::Kind::kConst) {
      return {false, "eventually constant non-level-function values in the ball"};
    }
    bool known = false;
    for (const auto& p : towers) known = known || limits::streams_equal(p, *a.tower);
    if (!known) towers.push_back(*a.tower);
  }
  if (towers.size() > k) {
    return {false, std::to_string(towers.size()) + " distinct infinite towers in the ball"};
  }
  std::map<BinStr, HfSet> leftover;
  auto consider = [&](const BinStr& node) {
    const HfSet v = stream_eval(f, node);
    for (const auto& p : towers) {
      if (truncation_code(p, node.size()) == v) return;
    }
    leftover.emplace(node, v);
  };
  for (std::size_t len = i; len < threshold; ++len) {
    for (const auto& tail : nodes_of_length(len - i)) consider(root.append(tail));
  }
  for (const auto& n : extra_nodes) consider(n);
  const CoverResult r = tower_cover_decide(leftover, k - towers.size());
  if (!r.covered) return {false, refutation(r, k - towers.size())};
  return {true, {}};
}

}  // namespace

Verdict tv_2ki(const StreamFun& f, std::size_t k, std::size_t i, std::size_t horizon) {
  if (horizon <= i) throw Error(ErrorKind::kInvalidArgument, "tv2ki needs horizon > i");
  const CoverResult r = tower_cover_decide(ball_region(f, i, horizon), k);
  if (!r.covered) return Verdict::refuted(refutation(r, k));
  try {
    const ExactAnswer exact = decide_exactly(f, k, i);
    if (exact.holds) return Verdict::holds();
    for (std::size_t n = horizon + 1; n <= limits::kMaxScanDepth; ++n) {
      const CoverResult deeper = tower_cover_decide(ball_region(f, i, n), k);
      if (!deeper.covered) return Verdict::refuted(refutation(deeper, k));
    }
    return Verdict::refuted("eventual: " + exact.reason);
  } catch (const UnsupportedQuery&) {
    return Verdict::consistent(horizon);
  }
}

}  // namespace medforge::cover
