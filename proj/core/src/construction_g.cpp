#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "construction_internal.hpp"
#include "medforge/branch.hpp"
#include "medforge/construction.hpp"
#include "medforge/error.hpp"

namespace medforge::construction {

using detail::quoted;

namespace detail {

std::optional<StreamFun> core_source(const StreamFun& g) {
  if (g.kind() == StreamKind::kF1Of) return g.f1_source();
  if (g.kind() == StreamKind::kPatch) return core_source(g.patch_base());
  return std::nullopt;
}

BinStr track_node(const limits::Track& t, std::size_t m) {
  const std::string bits = branch_bits(*t.source, m + 1);
  std::string s = bits.substr(0, m);
  s += bits[m] == '1' ? '0' : '1';
  s.append(t.tail, '0');
  return BinStr(s);
}

}  // namespace detail

BinStr deviation_node(const StreamFun& f, std::size_t n) {
  return detail::track_node(limits::Track{f, 0}, n);
}

StreamFun patch_build(const StreamFun& f, const NodeSet& w) { return StreamFun::patch(f1_of(f), w, f); }

// ---------------------------------------------------------------- X sets

ApparentX apparent_x(const StreamFun& g, std::size_t horizon) {
  ApparentX out;
  const std::vector<BinStr> nodes = nodes_of_depth_below(horizon);
  const std::size_t total = nodes.size();
  std::vector<HfSet> values(total);
  std::vector<char> x1(total), x2(total), chain(total);
  std::vector<std::size_t> outside(total);  // nodes above (inclusive) outside X2
  for (std::size_t i = 0; i < total; ++i) {
    values[i] = stream_eval(g, nodes[i]);
    x1[i] = is_levelfun_of_depth(values[i], nodes[i].size());
  }
  for (std::size_t i = total; i-- > 0;) {
    bool in2 = x1[i];
    bool is_chain = true;
    std::size_t below = 0;
    std::size_t branches = 0;
    for (std::size_t c : {2 * i + 1, 2 * i + 2}) {
      if (c >= total) continue;
      in2 = in2 && x2[c] && values[i].subset_of(values[c]);
      below += outside[c];
      branches += outside[c] > 0;
      is_chain = is_chain && chain[c];
    }
    x2[i] = in2;
    outside[i] = below + (in2 ? 0 : 1);
    chain[i] = is_chain && branches < 2;
  }
  for (std::size_t i = 0; i < total; ++i) {
    const bool in3 = outside[i] <= horizon - nodes[i].size();
    if (x1[i]) out.x1.push_back(nodes[i]);
    if (x2[i]) out.x2.push_back(nodes[i]);
    if (in3) out.x3.push_back(nodes[i]);
    if (in3 && chain[i]) out.x4.push_back(nodes[i]);
  }
  return out;
}

// ---------------------------------------------------------------- decoder

const char* to_string(RecoverFailure f) {
  switch (f) {
    case RecoverFailure::kNone:
      return "OK";
    case RecoverFailure::kNoMajority:
      return "NO_MAJORITY";
    case RecoverFailure::kNotLevelFun:
      return "NOT_LEVELFUN";
    case RecoverFailure::kIncoherent:
      return "INCOHERENT";
  }
  return "?";
}

LevelFun RecoverResult::at_depth(std::size_t n) const {
  if (tower.empty()) throw Error(ErrorKind::kInvalidArgument, "empty recovered tower");
  if (n >= 3) return tower.at(n - 3);
  return tower.front().restrict(n);
}

std::string RecoverResult::describe() const {
  if (ok()) return "OK";
  return std::string(to_string(failure)) + "(" + std::to_string(failed_level) + ")";
}

RecoverResult recover_f(const StreamFun& g, std::size_t horizon, DecoderOptions opts) {
  if (horizon < 3) throw Error(ErrorKind::kInvalidArgument, "recover needs horizon >= 3");
  RecoverResult out;
  for (std::size_t n = 3; n <= horizon; ++n) {
    std::unordered_map<HfSet, std::uint64_t> counts;
    for (const auto& node : nodes_of_length(n)) ++counts[stream_eval(g, node)];
    const std::uint64_t threshold = opts.corrupt_threshold ? (std::uint64_t{1} << n) : (std::uint64_t{1} << (n - 1));
    std::optional<HfSet> majority;
    for (const auto& [v, c] : counts) {
      if (c > threshold) majority = v;
    }
    auto fail = [&](RecoverFailure f) {
      out.failure = f;
      out.failed_level = n;
      return out;
    };
    if (!majority) return fail(RecoverFailure::kNoMajority);
    auto lf = decode_levelfun(*majority, n);
    if (!lf) return fail(RecoverFailure::kNotLevelFun);
    if (!out.tower.empty() && !out.tower.back().restricts(*lf)) return fail(RecoverFailure::kIncoherent);
    out.tower.push_back(std::move(*lf));
  }
  return out;
}

// ---------------------------------------------------------------- G-families

namespace {

std::optional<BinStr> first_difference_node(const StreamFun& a, const StreamFun& b, std::size_t depth) {
  for (const auto& n : nodes_of_length(depth)) {
    if (!(stream_eval(a, n) == stream_eval(b, n))) return n;
  }
  return std::nullopt;
}

Verdict g0_verdict(const StreamFun& g, std::size_t horizon) {
  std::optional<LevelFun> previous;
  for (std::size_t n = 0; n < horizon; ++n) {
    const auto level = nodes_of_length(n);
    const HfSet v = stream_eval(g, level.front());
    for (const auto& node : level) {
      if (!(stream_eval(g, node) == v)) return Verdict::refuted("not level-constant at " + quoted(node));
    }
    auto lf = decode_levelfun(v, n);
    if (!lf) return Verdict::refuted("value at " + quoted(level.front()) + " is not a level function");
    if (previous && !previous->restricts(*lf)) {
      return Verdict::refuted("values at levels " + std::to_string(n - 1) + " and " + std::to_string(n) +
                              " do not restrict");
    }
    previous = std::move(lf);
  }
  if (g.kind() == StreamKind::kF1Of) return Verdict::holds();
  try {
    if (auto p = detail::core_source(g)) {
      const StreamFun f1p = f1_of(*p);
      const auto d = limits::first_difference_depth(g, f1p);
      if (!d) return Verdict::holds();
      return Verdict::refuted("differs from the F1 image of its source at " +
                              quoted(*first_difference_node(g, f1p, *d)));
    }
    // Without an F1 core some class carries a constant, which is a level
    // function of at most one depth.
    for (std::size_t n = horizon; n <= limits::kMaxScanDepth; ++n) {
      const auto level = nodes_of_length(n);
      const HfSet v = stream_eval(g, level.front());
      if (!is_levelfun_of_depth(v, n)) return Verdict::refuted("value at " + quoted(level.front()) + " is not a level function");
      for (const auto& node : level) {
        if (!(stream_eval(g, node) == v)) return Verdict::refuted("not level-constant at " + quoted(node));
      }
    }
  } catch (const UnsupportedQuery&) {
  }
  return Verdict::consistent(horizon);
}

StreamFun table_of(const LevelFun& top) {
  std::map<BinStr, HfSet> exceptions;
  for (std::uint64_t i = 0; i < top.values().size(); ++i) {
    if (!top.at_index(i).empty()) exceptions.emplace(node_at_index(i), top.at_index(i));
  }
  return StreamFun::table(HfSet(), std::move(exceptions));
}

/// Two dif nodes meeting η at the same point, scanning 2^{<depth}.
std::optional<std::string> shared_meet(const std::vector<BinStr>& dif, const BinStr& eta) {
  std::map<std::size_t, BinStr> by_meet;
  for (const auto& v : dif) {
    const std::size_t m = node_meet(v, eta).size();
    auto [it, fresh] = by_meet.emplace(m, v);
    if (!fresh) {
      return "dif nodes " + quoted(it->second) + " and " + quoted(v) + " both meet the branch at " +
             quoted(eta.prefix(m));
    }
  }
  return std::nullopt;
}

bool residues_meet(const limits::EventualClass& a, const limits::EventualClass& b) {
  const std::size_t g = std::gcd(a.period, b.period);
  return a.residue % g == b.residue % g;
}

struct ExactG {
  Verdict g1;
  Verdict g2;
};

ExactG exact_g(const StreamFun& g, const StreamFun& p, std::size_t horizon) {
  const StreamFun f1p = f1_of(p);
  const StreamFun fs[] = {g, f1p, p};
  const limits::EventualView view = limits::analyze(fs);
  std::size_t max_tail = 0;
  for (const auto& t : view.tracks) max_tail = std::max(max_tail, t.tail);
  const std::size_t scan = std::max(horizon, view.level_threshold + 2 + max_tail);
  if (scan > limits::kMaxScanDepth) throw UnsupportedQuery("explicit scan to depth " + std::to_string(scan));

  std::vector<const limits::EventualClass*> differing;
  for (const auto& c : view.classes) {
    if (limits::atoms_equal(c.atoms[0], c.atoms[1])) continue;
    const limits::Track& t = view.tracks[c.track];
    if (t.generic()) {
      const Verdict r = Verdict::refuted("dif contains generic nodes at every level from " +
                                         std::to_string(view.level_threshold) + ", off every branch ball");
      return {r, Verdict::refuted("not in G1")};
    }
    const limits::TrackPlacement pl = limits::place_track(t, p);
    if (!pl.on_branch) {
      const Verdict r = Verdict::refuted("dif contains branch-off nodes leaving the branch at level " +
                                         std::to_string(pl.split));
      return {r, Verdict::refuted("not in G1")};
    }
    differing.push_back(&c);
  }
  for (std::size_t a = 0; a < differing.size(); ++a) {
    for (std::size_t b = a + 1; b < differing.size(); ++b) {
      if (differing[a]->track != differing[b]->track && residues_meet(*differing[a], *differing[b])) {
        const auto& ta = view.tracks[differing[a]->track];
        const auto& tb = view.tracks[differing[b]->track];
        const Verdict r = Verdict::refuted("branch-off families with tails " + std::to_string(ta.tail) + " and " +
                                           std::to_string(tb.tail) + " both differ at the same branch points");
        return {r, Verdict::refuted("not in G1")};
      }
    }
  }
  const EqDif ed = eq_dif_nodes(g, f1p, scan);
  if (auto clash = shared_meet(ed.dif, branch_node(p, scan))) {
    return {Verdict::refuted(*clash), Verdict::refuted("not in G1")};
  }
  if (differing.empty()) return {Verdict::refuted("dif finite"), Verdict::refuted("not in G1")};

  ExactG out{Verdict::holds(), Verdict::holds()};
  for (const auto* c : differing) {
    if (!limits::atoms_equal(c->atoms[0], c->atoms[2])) {
      const BinStr node = detail::track_node(view.tracks[c->track], c->first_index);
      out.g2 = Verdict::refuted("g differs from f_g on w at " + quoted(node));
      return out;
    }
  }
  for (const auto& v : ed.dif) {
    if (!(stream_eval(g, v) == stream_eval(p, v))) {
      out.g2 = Verdict::refuted("g differs from f_g on w at " + quoted(v));
      return out;
    }
  }
  for (const auto* c : differing) {
    if (c->atoms[0].kind == limits::Atom::Kind::kTower) {
      const auto& t = view.tracks[c->track];
      const BinStr a = detail::track_node(t, c->first_index);
      const BinStr b = detail::track_node(t, c->first_index + c->period);
      out.g2 = Verdict::refuted("w values at " + quoted(a) + " and " + quoted(b) + " are comparable");
      return out;
    }
  }
  for (const auto& v : ed.dif) {
    if (is_levelfun_of_depth(stream_eval(g, v), v.size())) {
      out.g2 = Verdict::refuted("w mixes level functions (" + quoted(v) + ") with other values");
      return out;
    }
  }
  return out;
}

Verdict g2_horizon(const StreamFun& g, const GClassification& c, std::size_t horizon) {
  std::vector<HfSet> values;
  std::vector<char> is_lf;
  for (const auto& v : c.w) {
    const HfSet gv = stream_eval(g, v);
    if ((c.candidate_exact || v.size() + 1 < horizon) && !(gv == stream_eval(*c.candidate, v))) {
      return Verdict::refuted("g differs from f_g on w at " + quoted(v));
    }
    values.push_back(gv);
    is_lf.push_back(is_levelfun_of_depth(gv, v.size()));
  }
  const bool any_lf = std::find(is_lf.begin(), is_lf.end(), 1) != is_lf.end();
  const bool all_lf = std::find(is_lf.begin(), is_lf.end(), 0) == is_lf.end();
  if (!any_lf) return Verdict::consistent(horizon);
  if (!all_lf) {
    const auto a = static_cast<std::size_t>(std::find(is_lf.begin(), is_lf.end(), 1) - is_lf.begin());
    const auto b = static_cast<std::size_t>(std::find(is_lf.begin(), is_lf.end(), 0) - is_lf.begin());
    return Verdict::refuted("w mixes level functions (" + quoted(c.w[a]) + ") with other values (" + quoted(c.w[b]) +
                            ")");
  }
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = 0; b < values.size(); ++b) {
      if (a != b && values[a].subset_of(values[b])) {
        return Verdict::refuted("w values at " + quoted(c.w[a]) + " and " + quoted(c.w[b]) + " are comparable");
      }
    }
  }
  return Verdict::consistent(horizon);
}

}  // namespace

GClassification classify_g(const StreamFun& g, std::size_t horizon, ClassifyOptions opts) {
  if (horizon < 4) throw Error(ErrorKind::kInvalidArgument, "classify needs horizon >= 4");
  GClassification out;
  out.g0 = g0_verdict(g, horizon);
  out.recovered = recover_f(g, horizon - 1, opts.decoder);
  if (!out.recovered.ok()) {
    out.g1 = Verdict::refuted(out.recovered.describe());
    out.g2 = Verdict::refuted("not in G1");
    return out;
  }
  if (auto p = detail::core_source(g)) {
    bool match = true;
    for (std::size_t n = 3; n < horizon && match; ++n) {
      match = truncation_code(*p, n) == encode_levelfun(out.recovered.at_depth(n));
    }
    if (match) {
      out.candidate = *p;
      out.candidate_exact = true;
    }
  }
  if (!out.candidate) out.candidate = table_of(out.recovered.at_depth(horizon - 1));
  const StreamFun f1c = f1_of(*out.candidate);
  out.w = eq_dif_nodes(g, f1c, horizon).dif;

  if (auto clash = shared_meet(out.w, branch_node(*out.candidate, horizon))) {
    out.g1 = Verdict::refuted(*clash);
    out.g2 = Verdict::refuted("not in G1");
    return out;
  }
  out.g1 = Verdict::consistent(horizon);
  out.g2 = g2_horizon(g, out, horizon);
  if (out.candidate_exact) {
    try {
      ExactG exact = exact_g(g, *out.candidate, horizon);
      out.g1 = exact.g1;
      if (out.g1.is_refuted() || !out.g2.is_refuted()) out.g2 = exact.g2;
    } catch (const UnsupportedQuery&) {
    }
  }
  if (out.g1.is_refuted() && !out.g2.is_refuted()) out.g2 = Verdict::refuted("not in G1");
  return out;
}

}  // namespace medforge::construction
