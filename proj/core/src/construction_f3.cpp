#include <algorithm>
#include <set>

#include "construction_internal.hpp"
#include "medforge/branch.hpp"
#include "medforge/construction.hpp"
#include "medforge/cover.hpp"
#include "medforge/error.hpp"
#include "medforge/ramsey.hpp"

namespace medforge::construction {

using detail::quoted;

namespace {

std::size_t meet_with_branch(const StreamFun& f, const BinStr& node) {
  return node_meet(node, branch_node(f, node.size())).size();
}

/// Nodes extending `root` with length < horizon, length-lex.
std::vector<BinStr> subtree_below(const BinStr& root, std::size_t horizon) {
  std::vector<BinStr> out;
  for (std::size_t len = root.size(); len < horizon; ++len) {
    for (const auto& tail : nodes_of_length(len - root.size())) out.push_back(root.append(tail));
  }
  return out;
}

void collect_f1_sources(const StreamFun& s, std::vector<StreamFun>& out) {
  switch (s.kind()) {
    case StreamKind::kF1Of:
      out.push_back(s.f1_source());
      collect_f1_sources(s.f1_source(), out);
      break;
    case StreamKind::kPatch:
      collect_f1_sources(s.patch_base(), out);
      collect_f1_sources(s.patch_override(), out);
      if (s.patch_set().kind() == NodeSetKind::kBranchOff) collect_f1_sources(s.patch_set().source(), out);
      break;
    default:
      break;
  }
}

}  // namespace

// ---------------------------------------------------------------- TV*

TvStar tv_star(const StreamFun& f, std::size_t horizon) {
  TvStar out;
  try {
    const StreamFun fs[] = {f};
    const limits::EventualView view = limits::analyze(fs);
    const std::size_t threshold = view.level_threshold;
    if (threshold > limits::kMaxScanDepth) throw UnsupportedQuery("explicit scan to depth " + std::to_string(threshold));
    std::size_t m = 0;
    for (const auto& c : view.classes) {
      if (c.atoms[0].kind != limits::Atom::Kind::kConst) continue;
      const limits::Track& t = view.tracks[c.track];
      if (t.generic()) {
        out.value = true;
        break;
      }
      const limits::TrackPlacement pl = limits::place_track(t, f);
      if (pl.on_branch) {
        out.value = true;
        break;
      }
      if (!pl.split_exact) throw UnsupportedQuery("branch split beyond " + std::to_string(limits::kMaxSplitBits));
      m = std::max(m, pl.split + 1);
      for (std::size_t idx = c.first_index; idx <= pl.split; idx += c.period) {
        m = std::max(m, meet_with_branch(f, detail::track_node(t, idx)) + 1);
      }
    }
    out.exact = true;
    if (out.value) {
      out.verdict = Verdict::holds();
      return out;
    }
    for (const auto& node : nodes_of_depth_below(threshold)) {
      if (!is_levelfun_of_depth(stream_eval(f, node), node.size())) m = std::max(m, meet_with_branch(f, node) + 1);
    }
    out.m = m;
    out.verdict = Verdict::refuted("every value above " + quoted(branch_node(f, m)) + " is a level function");
    return out;
  } catch (const UnsupportedQuery&) {
  }
  out = TvStar{};
  const BinStr deep = branch_node(f, horizon >= 2 ? horizon - 2 : 0);
  std::size_t m = 0;
  for (const auto& node : nodes_of_depth_below(horizon)) {
    if (is_levelfun_of_depth(stream_eval(f, node), node.size())) continue;
    m = std::max(m, meet_with_branch(f, node) + 1);
    if (deep.is_prefix_of(node)) out.value = true;
  }
  if (out.value) {
    out.verdict = Verdict::consistent(horizon);
  } else {
    out.m = m;
    out.verdict = Verdict::refuted("horizon: every value above " + quoted(branch_node(f, m)) + " is a level function");
  }
  return out;
}

// ---------------------------------------------------------------- Case I

namespace {

std::optional<BinStr> case1_witness(const StreamFun& f, std::size_t n, std::size_t extra) {
  const BinStr root = deviation_node(f, n);
  for (const auto& node : subtree_below(root, n + 2 + extra)) {
    if (!is_levelfun_of_depth(stream_eval(f, node), node.size())) return node;
  }
  return std::nullopt;
}

/// First index from which every deviation node of f carries a constant,
/// non-level-function value; nullopt when no such index exists or is known.
std::optional<std::size_t> constant_deviation_start(const StreamFun& f) {
  try {
    const StreamFun fs[] = {f};
    const limits::Track own[] = {limits::Track{f, 0}};
    const limits::EventualView view = limits::analyze(fs, own);
    std::optional<std::size_t> start;
    for (const auto& c : view.classes) {
      const limits::Track& t = view.tracks[c.track];
      if (t.generic() || t.tail != 0 || !limits::streams_equal(*t.source, f)) continue;
      if (c.atoms[0].kind != limits::Atom::Kind::kConst) return std::nullopt;
      start = std::min(start.value_or(c.first_index), c.first_index);
    }
    return start;
  } catch (const UnsupportedQuery&) {
    return std::nullopt;
  }
}

}  // namespace

Case1Result case1_build(const StreamFun& f, std::size_t count, std::size_t extra) {
  Case1Result out;
  std::size_t n = 0;
  for (; out.witnesses.size() < count && n < count + extra; ++n) {
    if (auto w = case1_witness(f, n, extra)) out.witnesses.emplace_back(n, *w);
  }
  if (out.witnesses.size() < count) {
    out.error = "NOT_CASE1(level " + std::to_string(n) + ")";
    return out;
  }
  out.ok = true;
  if (auto start = constant_deviation_start(f)) {
    std::vector<BinStr> early;
    bool complete = true;
    for (std::size_t level = 0; level < *start && complete; ++level) {
      auto it = std::find_if(out.witnesses.begin(), out.witnesses.end(), [&](const auto& p) { return p.first == level; });
      if (it != out.witnesses.end()) {
        early.push_back(it->second);
      } else if (auto w = case1_witness(f, level, extra)) {
        early.push_back(*w);
      } else {
        complete = false;
      }
    }
    if (complete) {
      const StreamFun tail = patch_build(f, NodeSet::branch_off(f, *start, 1, 0));
      out.stream = StreamFun::patch(tail, NodeSet::finite(std::move(early)), f);
      out.exact = true;
      return out;
    }
  }
  std::vector<BinStr> nodes;
  for (const auto& [level, node] : out.witnesses) nodes.push_back(node);
  out.stream = patch_build(f, NodeSet::finite(std::move(nodes)));
  return out;
}

// ---------------------------------------------------------------- h_k

const char* to_string(HkOutcome o) {
  switch (o) {
    case HkOutcome::kTower:
      return "TOWER";
    case HkOutcome::kCase2Witness:
      return "CASE2_WITNESS";
    case HkOutcome::kExhausted:
      return "EXHAUSTED";
    case HkOutcome::kHorizonTooSmall:
      return "HORIZON_TOO_SMALL";
  }
  return "?";
}

HkStep hk_step(const StreamFun& f, const std::vector<StreamFun>& prior, std::size_t horizon) {
  HkStep out;
  const TvStar ts = tv_star(f, horizon);
  const std::size_t start = ts.value ? 0 : ts.m;
  std::vector<HfSet> values;
  for (std::size_t n = start; n + 1 < horizon; ++n) {
    for (const auto& node : subtree_below(deviation_node(f, n), horizon)) {
      const HfSet v = stream_eval(f, node);
      const bool known = std::any_of(prior.begin(), prior.end(),
                                     [&](const StreamFun& h) { return truncation_code(h, node.size()) == v; });
      if (!known) {
        out.candidates.emplace_back(n, node);
        values.push_back(v);
        break;
      }
    }
  }
  if (out.candidates.empty()) {
    out.outcome = HkOutcome::kExhausted;
    out.exhausted_at = start;
    return out;
  }
  const std::size_t last = out.candidates.back().first;
  if (last + 2 < horizon - 1) {
    out.outcome = HkOutcome::kExhausted;
    out.exhausted_at = last + 1;
    return out;
  }
  if (out.candidates.size() < 4) {
    out.outcome = HkOutcome::kHorizonTooSmall;
    return out;
  }
  const std::size_t s = values.size();
  std::vector<std::vector<int>> table(s, std::vector<int>(s, 0));
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) {
      const bool comparable = values[a].subset_of(values[b]) || values[b].subset_of(values[a]);
      table[a][b] = table[b][a] = comparable ? 0 : 1;
    }
  }
  const ramsey::FiniteSample sample(std::move(table));
  const ramsey::HomogeneousResult hom = ramsey::homogeneous_prefix(sample, s);
  for (auto idx : hom.elements) out.selected_levels.push_back(out.candidates[idx].first);
  if (hom.color == 1) {
    if (hom.elements.size() < 4) {
      out.outcome = HkOutcome::kHorizonTooSmall;
      return out;
    }
    out.outcome = HkOutcome::kCase2Witness;
    for (auto idx : hom.elements) out.case2_nodes.push_back(out.candidates[idx].second);
    return out;
  }
  std::size_t deepest = hom.elements.front();
  for (auto idx : hom.elements) {
    if (out.candidates[idx].second.size() > out.candidates[deepest].second.size()) deepest = idx;
  }
  const BinStr& top_node = out.candidates[deepest].second;
  out.outcome = HkOutcome::kTower;
  out.tower_top = decode_levelfun(values[deepest], top_node.size());
  if (!out.tower_top) {
    out.outcome = HkOutcome::kHorizonTooSmall;
    return out;
  }
  std::vector<StreamFun> sources;
  collect_f1_sources(f, sources);
  for (const auto& q : sources) {
    const bool match = std::all_of(hom.elements.begin(), hom.elements.end(), [&](std::uint64_t idx) {
      return truncation_code(q, out.candidates[idx].second.size()) == values[idx];
    });
    if (match) {
      out.tower = q;
      out.tower_exact = true;
      return out;
    }
  }
  std::map<BinStr, HfSet> exceptions;
  for (std::uint64_t i = 0; i < out.tower_top->values().size(); ++i) {
    if (!out.tower_top->at_index(i).empty()) exceptions.emplace(node_at_index(i), out.tower_top->at_index(i));
  }
  out.tower = StreamFun::table(HfSet(), std::move(exceptions));
  return out;
}

// ---------------------------------------------------------------- h*

IndexedFamily IndexedFamily::periodic(std::vector<StreamFun> prefix, std::vector<StreamFun> cycle) {
  if (cycle.empty()) throw Error(ErrorKind::kInvalidArgument, "periodic family needs a non-empty cycle");
  IndexedFamily out;
  out.kind = Kind::kPeriodic;
  out.prefix = std::move(prefix);
  out.cycle = std::move(cycle);
  return out;
}

IndexedFamily IndexedFamily::ladder(StreamFun base, BinStr node) {
  IndexedFamily out;
  out.kind = Kind::kLadder;
  out.base = std::move(base);
  out.node = std::move(node);
  return out;
}

StreamFun IndexedFamily::member(std::size_t k) const {
  if (kind == Kind::kLadder) {
    return StreamFun::patch(*base, NodeSet::finite({node}), StreamFun::table(von_neumann(k)));
  }
  if (k < prefix.size()) return prefix[k];
  return cycle[(k - prefix.size()) % cycle.size()];
}

HStarResult h_star_limit(const IndexedFamily& hs, std::size_t horizon) {
  HStarResult out;
  if (hs.kind == IndexedFamily::Kind::kLadder) {
    const std::size_t j = hs.node.size() + 1;
    if (j <= horizon) {
      out.tv3_true = true;
      out.j = j;
      return out;
    }
    for (std::size_t n = 2; n <= horizon; ++n) out.selected.push_back(n + 1);
    return out;
  }
  if (hs.kind != IndexedFamily::Kind::kPeriodic) throw UnsupportedQuery("indexed family kind");

  std::vector<StreamFun> reps;
  for (const auto& c : hs.cycle) {
    if (std::none_of(reps.begin(), reps.end(), [&](const StreamFun& r) { return limits::streams_equal(r, c); })) {
      reps.push_back(c);
    }
  }
  std::size_t stable = 2;
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      stable = std::max(stable, *limits::first_difference_depth(reps[a], reps[b]) + 1);
    }
  }
  const std::size_t last = std::max(horizon, stable);
  const std::size_t scan = hs.prefix.size() + 2 * hs.cycle.size() + 1;
  std::optional<std::size_t> previous;
  std::optional<StreamFun> chosen;
  for (std::size_t n = 2; n <= last; ++n) {
    const std::size_t lower = previous ? *previous + 1 : 3;
    std::optional<std::size_t> k_n;
    for (std::size_t k = lower; k < lower + scan && !k_n; ++k) {
      const StreamFun hk = hs.member(k);
      if (previous && !(truncation_code(hk, n - 1) == truncation_code(hs.member(*previous), n - 1))) continue;
      const HfSet code = truncation_code(hk, n);
      for (const auto& r : reps) {
        if (truncation_code(r, n) == code) {
          k_n = k;
          chosen = r;
          break;
        }
      }
    }
    if (!k_n) throw UnsupportedQuery("diagonal selection found no index at depth " + std::to_string(n));
    if (n <= horizon) out.selected.push_back(*k_n);
    previous = k_n;
  }
  out.h_star = chosen;
  return out;
}

// ---------------------------------------------------------------- F3*

const char* to_string(F3Dispatch d) {
  switch (d) {
    case F3Dispatch::kCase1:
      return "CASE1";
    case F3Dispatch::kNotInH3:
      return "NOT_IN_H3";
    case F3Dispatch::kCase2Witness:
      return "CASE2_WITNESS";
    case F3Dispatch::kTv3Builder:
      return "TV3_BUILDER";
    case F3Dispatch::kHStarBuilder:
      return "HSTAR_BUILDER";
    case F3Dispatch::kUndetermined:
      return "UNDETERMINED";
    case F3Dispatch::kUnsupported:
      return "UNSUPPORTED";
  }
  return "?";
}

F3Result f3star(const StreamFun& f, std::size_t horizon, F3Options opts) {
  if (horizon < 4) throw Error(ErrorKind::kInvalidArgument, "f3star needs horizon >= 4");
  F3Result out;
  try {
    const TvStar ts = tv_star(f, horizon);
    out.trace.push_back("tv_star=" + to_string(ts.verdict) + (ts.exact ? " exact" : " horizon") +
                        " m=" + std::to_string(ts.m));
    if (ts.value) {
      const Case1Result c1 = case1_build(f, horizon);
      if (!c1.ok) {
        out.trace.push_back("case1: " + c1.error);
        return out;
      }
      out.dispatch = F3Dispatch::kCase1;
      out.stream = c1.stream;
      out.exact = c1.exact && ts.exact;
      return out;
    }
    for (std::size_t k = 1; k <= opts.k_max; ++k) {
      for (std::size_t i = 0; i < horizon; ++i) {
        const Verdict v = cover::tv_2ki(f, k, i, horizon);
        if (v.is_refuted()) continue;
        out.trace.push_back("tv2ki(k=" + std::to_string(k) + ",i=" + std::to_string(i) + ")=" + to_string(v));
        out.dispatch = F3Dispatch::kNotInH3;
        out.stream = StreamFun::table(HfSet());
        out.exact = v.is_holds();
        return out;
      }
    }
    out.trace.push_back("tv2ki refuted for all k<=" + std::to_string(opts.k_max) + ", i<" + std::to_string(horizon));

    std::vector<StreamFun> hs;
    std::vector<HkStep> steps;
    for (std::size_t iter = 0; iter < horizon; ++iter) {
      HkStep s = hk_step(f, hs, horizon);
      out.trace.push_back("hk[" + std::to_string(iter) + "]=" + to_string(s.outcome));
      if (s.outcome == HkOutcome::kCase2Witness) {
        out.dispatch = F3Dispatch::kCase2Witness;
        out.stream = patch_build(f, NodeSet::finite(s.case2_nodes));
        return out;
      }
      if (s.outcome != HkOutcome::kTower) break;
      hs.push_back(*s.tower);
      steps.push_back(std::move(s));
    }
    if (hs.size() < 2) return out;

    // Least j at which the observed towers are pairwise distinct.
    std::optional<std::size_t> j_f;
    for (std::size_t j = 1; j < horizon && !j_f; ++j) {
      std::set<HfSet> seen;
      for (const auto& h : hs) seen.insert(truncation_code(h, j));
      if (seen.size() == hs.size()) j_f = j;
    }
    std::vector<BinStr> nodes;
    std::size_t floor = j_f.value_or(0);
    const StreamFun& h_last = hs.back();
    for (std::size_t k = 0; k < steps.size(); ++k) {
      if (!j_f && k + 1 == steps.size()) break;
      for (std::size_t level : steps[k].selected_levels) {
        if (level < floor) continue;
        auto it = std::find_if(steps[k].candidates.begin(), steps[k].candidates.end(),
                               [&](const auto& c) { return c.first == level; });
        const BinStr& node = it->second;
        if (!j_f && stream_eval(f, node) == truncation_code(h_last, node.size())) continue;
        nodes.push_back(node);
        floor = level + 1;
        break;
      }
    }
    out.trace.push_back(j_f ? "tv3 j=" + std::to_string(*j_f) + " (horizon)" : std::string("tv3 false (horizon)"));
    out.dispatch = j_f ? F3Dispatch::kTv3Builder : F3Dispatch::kHStarBuilder;
    out.stream = patch_build(f, NodeSet::finite(std::move(nodes)));
    return out;
  } catch (const UnsupportedQuery& e) {
    out.dispatch = F3Dispatch::kUnsupported;
    out.stream.reset();
    out.trace.push_back(e.what());
    return out;
  }
}

}  // namespace medforge::construction
