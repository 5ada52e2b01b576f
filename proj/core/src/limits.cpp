#include "medforge/limits.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "medforge/branch.hpp"
#include "medforge/error.hpp"

namespace medforge::limits {

HfSet Atom::at_level(std::size_t level) const {
  if (kind == Kind::kConst) return value;
  return truncation_code(*tower, level);
}

bool Atom::is_levelfun_at(std::size_t level) const {
  if (kind == Kind::kTower) return true;
  return is_levelfun_of_depth(value, level);
}

bool atoms_equal(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Atom::Kind::kConst) return a.value == b.value;
  return streams_equal(*a.tower, *b.tower);
}

namespace {

// Eventual description of one stream along one track: index j ≥ start has
// atom cycle[j % period].
struct Seq {
  std::size_t start = 0;
  std::size_t period = 1;
  std::vector<Atom> cycle;
};

std::size_t index_for_level(const Track& t, std::size_t level) {
  if (t.generic()) return level;
  return level > 1 + t.tail ? level - 1 - t.tail : 0;
}

std::size_t required_split(const StreamFun& a, const StreamFun& b) {
  auto s = branch_split(a, b, kMaxSplitBits);
  if (!s) throw UnsupportedQuery("branch codes agree beyond " + std::to_string(kMaxSplitBits) + " bits");
  return *s;
}

Seq describe(const StreamFun& s, const Track& t) {
  switch (s.kind()) {
    case StreamKind::kTable: {
      std::size_t longest = 0;
      for (const auto& [k, v] : s.table_exceptions()) longest = std::max(longest, k.size() + 1);
      return Seq{index_for_level(t, longest), 1, {Atom::constant(s.table_default())}};
    }
    case StreamKind::kLevelConst: {
      const auto& sched = s.schedule();
      Seq out{0, sched.size(), {}};
      for (std::size_t j = 0; j < sched.size(); ++j) {
        out.cycle.push_back(Atom::constant(sched[t.level_of(j) % sched.size()]));
      }
      return out;
    }
    case StreamKind::kF1Of:
      return Seq{0, 1, {Atom::truncations(s.f1_source())}};
    case StreamKind::kPatch:
      break;
  }
  Seq base = describe(s.patch_base(), t);
  const NodeSet& w = s.patch_set();
  if (w.kind() == NodeSetKind::kFinite) {
    std::size_t longest = 0;
    for (const auto& n : w.finite_nodes()) longest = std::max(longest, n.size() + 1);
    base.start = std::max(base.start, index_for_level(t, longest));
    return base;
  }
  // Generic nodes are off every collected branch-off family.
  if (t.generic()) return base;
  const bool same_source = streams_equal(*t.source, w.source());
  if (!same_source || w.tail() != t.tail) {
    if (!same_source) {
      const std::size_t split = required_split(*t.source, w.source());
      const std::size_t extra = w.tail() > t.tail ? w.tail() - t.tail : 0;
      base.start = std::max(base.start, split + 1 + extra);
    }
    return base;
  }
  Seq over = describe(s.patch_override(), t);
  Seq out;
  out.period = std::lcm(std::lcm(base.period, over.period), w.step());
  out.start = std::max({base.start, over.start, w.start()});
  const std::size_t phase = w.start() % w.step();
  for (std::size_t j = 0; j < out.period; ++j) {
    const bool member = (j % w.step()) == phase;
    out.cycle.push_back(member ? over.cycle[j % over.period] : base.cycle[j % base.period]);
  }
  return out;
}

void add_track(const Track& track, std::vector<Track>& tracks) {
  for (const auto& t : tracks) {
    if (!t.generic() && t.tail == track.tail && streams_equal(*t.source, *track.source)) return;
  }
  tracks.push_back(track);
}

void collect_tracks(const StreamFun& s, std::vector<Track>& tracks) {
  if (s.kind() != StreamKind::kPatch) return;
  collect_tracks(s.patch_base(), tracks);
  collect_tracks(s.patch_override(), tracks);
  const NodeSet& w = s.patch_set();
  if (w.kind() == NodeSetKind::kBranchOff) add_track(Track{w.source(), w.tail()}, tracks);
}

struct DiffMemo {
  std::mutex mu;
  // Holds the streams so their identities stay unique while memoised.
  std::map<std::pair<const void*, const void*>,
           std::pair<std::pair<StreamFun, StreamFun>, std::optional<std::size_t>>>
      table;

  static DiffMemo& instance() {
    static DiffMemo m;
    return m;
  }
};

bool differs_at_level(const StreamFun& a, const StreamFun& b, std::size_t level) {
  if (a.kind() == StreamKind::kF1Of && b.kind() == StreamKind::kF1Of) {
    return !(truncation_code(a.f1_source(), level) == truncation_code(b.f1_source(), level));
  }
  for (const auto& n : nodes_of_length(level)) {
    if (!(stream_eval(a, n) == stream_eval(b, n))) return true;
  }
  return false;
}

}  // namespace

EventualView analyze(std::span<const StreamFun> streams, std::span<const Track> extra_tracks) {
  EventualView view;
  view.tracks.push_back(Track{});
  for (const auto& s : streams) collect_tracks(s, view.tracks);
  for (const auto& t : extra_tracks) {
    if (!t.generic()) add_track(t, view.tracks);
  }

  std::size_t threshold = 0;
  // Enough levels for generic nodes to exist beside every track node.
  while ((std::size_t{1} << threshold) <= view.tracks.size()) ++threshold;

  std::vector<std::vector<Seq>> seqs(view.tracks.size());
  std::vector<std::size_t> periods(view.tracks.size(), 1);
  std::vector<std::size_t> starts(view.tracks.size(), 0);
  for (std::size_t k = 0; k < view.tracks.size(); ++k) {
    for (const auto& s : streams) {
      seqs[k].push_back(describe(s, view.tracks[k]));
      periods[k] = std::lcm(periods[k], seqs[k].back().period);
      starts[k] = std::max(starts[k], seqs[k].back().start);
    }
    threshold = std::max(threshold, view.tracks[k].level_of(starts[k]));
  }

  // Distinct tracks become disjoint once their branch codes have split.
  for (std::size_t a = 1; a < view.tracks.size(); ++a) {
    for (std::size_t b = a + 1; b < view.tracks.size(); ++b) {
      const auto& ta = view.tracks[a];
      const auto& tb = view.tracks[b];
      if (streams_equal(*ta.source, *tb.source)) continue;
      const std::size_t split = required_split(*ta.source, *tb.source);
      threshold = std::max(threshold, split + 2 + std::max(ta.tail, tb.tail));
    }
  }

  for (std::size_t k = 0; k < view.tracks.size(); ++k) {
    for (std::size_t r = 0; r < periods[k]; ++r) {
      EventualClass c;
      c.track = k;
      c.residue = r;
      c.period = periods[k];
      for (const auto& sq : seqs[k]) c.atoms.push_back(sq.cycle[r % sq.period]);
      view.classes.push_back(std::move(c));
    }
  }

  // Make every atom relation constant inside each class.
  for (const auto& c : view.classes) {
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
      const Atom& a = c.atoms[i];
      if (a.kind == Atom::Kind::kConst) {
        if (auto d = levelfun_depth(a.value)) threshold = std::max(threshold, *d + 1);
      }
      for (std::size_t j = i + 1; j < c.atoms.size(); ++j) {
        const Atom& b = c.atoms[j];
        if (a.kind == Atom::Kind::kTower && b.kind == Atom::Kind::kTower) {
          if (auto fd = first_difference_depth(*a.tower, *b.tower)) threshold = std::max(threshold, *fd + 1);
        }
      }
    }
  }

  view.level_threshold = threshold;
  for (auto& c : view.classes) {
    const Track& t = view.tracks[c.track];
    std::size_t first = std::max(starts[c.track], index_for_level(t, threshold));
    while (t.level_of(first) < threshold) ++first;
    while (first % c.period != c.residue) ++first;
    c.first_index = first;
  }
  return view;
}

DifSize dif_size(const StreamFun& a, const StreamFun& b) {
  const StreamFun pair[] = {a, b};
  const EventualView view = analyze(pair);
  for (const auto& c : view.classes) {
    if (!atoms_equal(c.atoms[0], c.atoms[1])) return DifSize{true, 0};
  }
  return DifSize{false, view.level_threshold};
}

std::optional<std::size_t> first_difference_depth(const StreamFun& a, const StreamFun& b) {
  if (a.identity() == b.identity()) return std::nullopt;
  auto& memo = DiffMemo::instance();
  const auto key = std::minmax(a.identity(), b.identity());
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    if (auto it = memo.table.find(key); it != memo.table.end()) return it->second.second;
  }
  std::optional<std::size_t> result;
  const DifSize d = dif_size(a, b);
  const std::size_t scan = d.infinite ? kMaxScanDepth : d.bound;
  if (scan > kMaxScanDepth && !d.infinite) {
    throw UnsupportedQuery("stream equality needs a scan to depth " + std::to_string(scan));
  }
  bool found = false;
  for (std::size_t level = 0; level < scan && !found; ++level) {
    if (differs_at_level(a, b, level)) {
      result = level;
      found = true;
    }
  }
  if (!found && d.infinite) {
    throw UnsupportedQuery("first difference lies beyond depth " + std::to_string(kMaxScanDepth));
  }
  std::lock_guard<std::mutex> lock(memo.mu);
  memo.table.emplace(key, std::pair{std::pair{a, b}, result});
  return result;
}

bool streams_equal(const StreamFun& a, const StreamFun& b) {
  return !first_difference_depth(a, b).has_value();
}

TrackPlacement place_track(const Track& t, const StreamFun& f) {
  if (t.generic()) return TrackPlacement{true, 0};
  if (streams_equal(*t.source, f)) return TrackPlacement{true, 0};
  if (auto s = branch_split(*t.source, f, kMaxSplitBits)) return TrackPlacement{false, *s, true};
  return TrackPlacement{false, kMaxSplitBits, false};
}

}  // namespace medforge::limits
