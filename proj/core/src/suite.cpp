#include "medforge/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "medforge/branch.hpp"
#include "medforge/construction.hpp"
#include "medforge/cover.hpp"
#include "medforge/error.hpp"
#include "medforge/hf.hpp"
#include "medforge/ramsey.hpp"
#include "medforge/text.hpp"
#include "medforge/tree.hpp"

namespace medforge::suite {

namespace con = medforge::construction;

namespace {

constexpr std::size_t kMaxWitnesses = 5;

HfSet small_value(std::mt19937_64& rng, std::uint64_t codes) {
  return ack_decode(BigInt(rng() % codes));
}

BinStr random_node(std::mt19937_64& rng, std::size_t length) {
  std::string s;
  for (std::size_t i = 0; i < length; ++i) s.push_back((rng() & 1) ? '1' : '0');
  return BinStr(s);
}

struct Instance {
  StreamFun f;
  NodeSet w;
  StreamFun g;
};

// The (f, w, g) instances shared by the decoding checks.
std::vector<Instance> decoding_instances(std::uint64_t seed, std::size_t horizon, std::size_t count,
                                         std::uint64_t value_codes) {
  std::mt19937_64 rng(seed ^ 0x6d616a6f72ULL);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    StreamFun f = random_table(rng, horizon, 1 + rng() % 4, value_codes);
    NodeSet w = random_conforming_w(rng, f);
    StreamFun g = con::patch_build(f, w);
    out.push_back(Instance{f, w, g});
  }
  return out;
}

std::string instance_text(const Instance& in) { return "f=" + to_text(in.f) + " w=" + to_text(in.w); }

class Recorder {
 public:
  explicit Recorder(CheckRecord& r) : r_(r) {}
  void instance() { ++r_.instances; }
  void fail(const std::string& witness) {
    r_.passed = false;
    if (r_.witnesses.size() < kMaxWitnesses) r_.witnesses.push_back(witness);
  }
  void expect(bool ok, const std::function<std::string()>& witness) {
    if (!ok) fail(witness());
  }

 private:
  CheckRecord& r_;
};

// ------------------------------------------------------------------ checks

void check_hf_roundtrip(const SuiteOptions&, Recorder& rec) {
  for (unsigned n = 0; n < 4096; ++n) {
    rec.instance();
    const BigInt code(n);
    rec.expect(ack_code(ack_decode(code)) == code, [&] { return "code " + std::to_string(n); });
  }
  // Sets of rank ≤ 3 over the atoms ∅, {∅}, {{∅}}: all subsets of the atoms,
  // all subsets of those, and all subsets of size ≤ 2 of the latter.
  const HfSet e;
  const std::vector<HfSet> atoms = {e, HfSet::make({e}), HfSet::make({HfSet::make({e})})};
  auto subsets = [](const std::vector<HfSet>& base) {
    std::vector<HfSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << base.size()); ++mask) {
      std::vector<HfSet> items;
      for (std::size_t i = 0; i < base.size(); ++i) {
        if (mask >> i & 1) items.push_back(base[i]);
      }
      out.push_back(HfSet::make(items));
    }
    return out;
  };
  const std::vector<HfSet> level1 = subsets(atoms);
  const std::vector<HfSet> level2 = subsets(level1);
  std::vector<HfSet> level3 = {e};
  for (std::size_t i = 0; i < level2.size(); ++i) {
    level3.push_back(HfSet::make({level2[i]}));
    for (std::size_t j = i + 1; j < level2.size(); ++j) level3.push_back(HfSet::make({level2[i], level2[j]}));
  }
  for (const std::vector<HfSet>* layer : std::initializer_list<const std::vector<HfSet>*>{&level1, &level2, &level3}) {
    for (const auto& x : *layer) {
      rec.instance();
      const HfSet back = ack_decode(ack_code(x));
      rec.expect(back == x && parse_hf(to_literal(x)) == x, [&] { return to_literal(x); });
    }
  }
}

void check_branch_injectivity(const SuiteOptions& opts, Recorder& rec) {
  std::mt19937_64 rng(opts.seed ^ 0x6272616e6368ULL);
  // Depth 3 with codes < 8: seven prefix codes of ≤ 7 bits fit in 64 bits.
  std::map<std::string, StreamFun> distinct;
  while (distinct.size() < 200) {
    StreamFun f = random_table(rng, 3, 1 + rng() % 4, 8);
    distinct.emplace(to_text(f), f);
  }
  std::map<std::string, std::string> seen;
  for (const auto& [text, f] : distinct) {
    rec.instance();
    const std::string bits = branch_bits(f, 64);
    auto [it, fresh] = seen.emplace(bits, text);
    rec.expect(fresh, [&] { return text + " collides with " + it->second; });
    for (std::size_t t = 1; t <= 64; ++t) {
      QueryCounter qc;
      branch_bits(f, t, &qc);
      rec.expect(qc.max_index <= t, [&] { return text + " bit " + std::to_string(t) + " reads node " +
                                                 std::to_string(qc.max_index); });
    }
  }
}

void check_majority(const SuiteOptions& opts, Recorder& rec) {
  const std::size_t n_max = opts.horizon;
  con::DecoderOptions dopts;
  dopts.corrupt_threshold = opts.corrupt_decoder;
  for (const auto& in : decoding_instances(opts.seed, n_max, 200, 16)) {
    rec.instance();
    const StreamFun base = f1_of(in.f);
    for (std::size_t n = 3; n <= n_max; ++n) {
      std::size_t dif = 0;
      for (const auto& v : nodes_of_length(n)) dif += !(stream_eval(in.g, v) == stream_eval(base, v));
      rec.expect(dif <= n, [&] { return instance_text(in) + " level " + std::to_string(n) + " dif " + std::to_string(dif); });
    }
    const con::RecoverResult r = con::recover_f(in.g, n_max, dopts);
    bool exact = r.ok();
    for (std::size_t j = 0; exact && j < r.tower.size(); ++j) exact = r.tower[j] == restrict(in.f, j + 3);
    rec.expect(exact, [&] { return instance_text(in) + " " + r.describe(); });
  }
}

void check_x4(const SuiteOptions& opts, Recorder& rec) {
  for (const auto& in : decoding_instances(opts.seed, opts.horizon, 200, 16)) {
    rec.instance();
    const con::ApparentX x = con::apparent_x(in.g, opts.horizon);
    std::vector<std::size_t> inside(opts.horizon, 0);
    for (const auto& v : x.x4) ++inside[v.size()];
    for (std::size_t n = 0; n < opts.horizon; ++n) {
      const std::size_t missing = (std::size_t{1} << n) - inside[n];
      rec.expect(missing <= 1, [&] { return instance_text(in) + " level " + std::to_string(n) + " misses " + std::to_string(missing); });
    }
  }
}

// All level functions of depth `depth` with values in `universe`.
std::vector<LevelFun> all_levelfuns(std::size_t depth, const std::vector<HfSet>& universe) {
  const std::size_t slots = static_cast<std::size_t>(nodes_below(depth));
  std::vector<LevelFun> out;
  std::vector<std::size_t> digits(slots, 0);
  while (true) {
    std::vector<HfSet> values;
    for (auto d : digits) values.push_back(universe[d]);
    out.emplace_back(depth, std::move(values));
    std::size_t i = 0;
    while (i < slots && ++digits[i] == universe.size()) digits[i++] = 0;
    if (i == slots) break;
  }
  return out;
}

void check_uniqueness(const SuiteOptions& opts, Recorder& rec) {
  const std::vector<HfSet> universe = {HfSet(), HfSet::make({HfSet()})};
  const std::vector<LevelFun> towers = all_levelfuns(3, universe);
  std::vector<HfSet> codes;
  for (const auto& t : towers) codes.push_back(encode_levelfun(t));
  for (const auto& in : decoding_instances(opts.seed ^ 1, 3, 200, 2)) {
    rec.instance();
    std::vector<HfSet> level3;
    for (const auto& v : nodes_of_length(3)) level3.push_back(stream_eval(in.g, v));
    std::size_t compatible = 0;
    std::size_t which = 0;
    for (std::size_t t = 0; t < codes.size(); ++t) {
      const auto hits = std::count(level3.begin(), level3.end(), codes[t]);
      if (hits > 4) {
        ++compatible;
        which = t;
      }
    }
    rec.expect(compatible == 1 && towers[which] == restrict(in.f, 3),
               [&] { return instance_text(in) + " compatible towers " + std::to_string(compatible); });
  }
}

void check_pair_finiteness(const SuiteOptions& opts, Recorder& rec) {
  std::mt19937_64 rng(opts.seed ^ 0x7061697273ULL);
  const std::size_t n = opts.horizon;
  auto check_pair = [&](const StreamFun& g1, const StreamFun& g2, const std::string& label) {
    rec.instance();
    const con::Claim3Result r = con::claim3_bound(g1, g2, n);
    if (r.same_f || r.verdict.is_refuted()) {
      rec.fail(label + " " + (r.same_f ? std::string("SAME_F") : to_string(r.verdict)));
      return;
    }
    for (const auto& v : eq_dif_nodes(g1, g2, n).eq) {
      if (v.size() >= r.bound) {
        rec.fail(label + " agreement at \"" + v.str() + "\" with bound " + std::to_string(r.bound));
        return;
      }
    }
  };
  std::size_t pairs = 0;
  while (pairs < 50) {
    StreamFun f1 = random_table(rng, n, 1 + rng() % 4);
    StreamFun f2 = random_table(rng, n, 1 + rng() % 4);
    // The decoder sees truncations of depth < n only.
    if (restrict(f1, n - 1) == restrict(f2, n - 1)) continue;
    const NodeSet w1 = random_conforming_w(rng, f1);
    const NodeSet w2 = random_conforming_w(rng, f2);
    const StreamFun g1 = con::patch_build(f1, w1);
    const StreamFun g2 = con::patch_build(f2, w2);
    check_pair(g1, g2, "g1=" + to_text(g1) + " g2=" + to_text(g2));
    StreamFun f0 = random_table(rng, n, 1 + rng() % 4);
    if (!(restrict(f0, n - 1) == restrict(f1, n - 1))) {
      check_pair(g1, f1_of(f0), "g1=" + to_text(g1) + " f0=" + to_text(f0));
    }
    ++pairs;
  }
}

// Members of a sample of G4: Case-I outputs and F1 of single-tower streams.
std::vector<StreamFun> g4_sample(std::uint64_t seed, std::size_t horizon, Recorder& rec) {
  std::mt19937_64 rng(seed ^ 0x6734ULL);
  std::vector<StreamFun> members;
  // Members must be distinguishable inside the horizon.
  auto fresh = [&](const StreamFun& g) {
    return std::all_of(members.begin(), members.end(),
                       [&](const StreamFun& m) { return !eq_dif_nodes(m, g, horizon).dif.empty(); });
  };
  while (members.size() < 10) {
    StreamFun f = random_table(rng, horizon, 1 + rng() % 4);
    const con::F3Result r = con::f3star(f, horizon);
    if (r.dispatch != con::F3Dispatch::kCase1 || !r.stream) {
      rec.fail("case-I source " + to_text(f) + " dispatched " + con::to_string(r.dispatch));
      return members;
    }
    if (fresh(*r.stream)) members.push_back(*r.stream);
  }
  while (members.size() < 15) {
    StreamFun f = f1_of(random_table(rng, horizon, 1 + rng() % 4));
    const con::F3Result r = con::f3star(f, horizon);
    if (r.dispatch != con::F3Dispatch::kNotInH3) {
      rec.fail("single-tower source " + to_text(f) + " dispatched " + con::to_string(r.dispatch));
      return members;
    }
    if (fresh(f1_of(f))) members.push_back(f1_of(f));
  }
  return members;
}

void check_ed_family(const SuiteOptions& opts, Recorder& rec) {
  const std::vector<StreamFun> members = g4_sample(opts.seed, opts.horizon, rec);
  if (members.size() < 15) return;
  const con::FamilyReport report = con::family_ed_check(members, opts.horizon);
  for (const auto& p : report.pairs) {
    rec.instance();
    rec.expect(!p.flagged, [&] {
      return "pair (" + std::to_string(p.a) + "," + std::to_string(p.b) + ") " + p.reason + " a=" +
             to_text(members[p.a]) + " b=" + to_text(members[p.b]);
    });
  }
}

void check_ramsey(const SuiteOptions&, Recorder& rec) {
  const char* specs[] = {"constant:0", "constant:1", "minparity", "threshold:3", "periodic:01/10@3"};
  for (const char* spec : specs) {
    rec.instance();
    const auto r = ramsey::parse_coloring(spec);
    const ramsey::HomogeneousResult a = ramsey::homogeneous_prefix(*r, 16, true);
    const ramsey::HomogeneousResult b = ramsey::homogeneous_prefix(*r, 16, true);
    rec.expect(a.elements.size() == 16 && a.complete, [&] { return std::string(spec) + " incomplete"; });
    rec.expect(a.elements == b.elements && a.trace == b.trace && a.color == b.color,
               [&] { return std::string(spec) + " nondeterministic"; });
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
      for (std::size_t j = i + 1; j < a.elements.size(); ++j) {
        rec.expect(r->color(a.elements[i], a.elements[j]) == a.color, [&] {
          return std::string(spec) + " R(" + std::to_string(a.elements[i]) + "," + std::to_string(a.elements[j]) + ")";
        });
      }
    }
    if (std::string(spec) == "minparity") {
      for (std::size_t i = 0; i < a.elements.size(); ++i) {
        rec.expect(a.elements[i] == 2 * i, [&] { return std::string("minparity element ") + std::to_string(i); });
      }
    }
  }
}

// Small forest of level functions: a depth-d value is fixed by its entries on
// the nodes ε, 0, 00 (all other entries ∅), over the universe {∅, {∅}}.
std::vector<LevelFun> path_levelfuns(std::size_t depth) {
  const HfSet one = HfSet::make({HfSet()});
  std::vector<LevelFun> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << depth); ++mask) {
    std::vector<HfSet> values(static_cast<std::size_t>(nodes_below(depth)), HfSet());
    std::string path;
    for (std::size_t d = 0; d < depth; ++d) {
      if (mask >> d & 1) {
        values[static_cast<std::size_t>(index_of_node(BinStr(path)))] = one;
      }
      path.push_back('0');
    }
    out.emplace_back(depth, std::move(values));
  }
  return out;
}

bool brute_force_cover(const std::vector<LevelFun>& vals, std::size_t k) {
  if (vals.empty()) return true;
  if (k == 0) return false;
  std::vector<std::size_t> group(vals.size(), 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < vals.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < vals.size(); ++j) {
        if (group[i] != group[j]) continue;
        ok = vals[i].restricts(vals[j]) || vals[j].restricts(vals[i]);
      }
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < group.size() && ++group[i] == k) group[i++] = 0;
    if (i == group.size()) return false;
  }
}

void check_tower_cover(const SuiteOptions&, Recorder& rec) {
  std::vector<LevelFun> universe;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (auto& l : path_levelfuns(d)) universe.push_back(std::move(l));
  }
  const std::size_t u = universe.size();
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> visit = [&](std::size_t from) {
    std::vector<LevelFun> vals;
    std::map<BinStr, HfSet> region;
    std::vector<std::size_t> used(4, 0);
    for (auto i : pick) {
      const LevelFun& l = universe[i];
      vals.push_back(l);
      region.emplace(nodes_of_length(l.depth())[used[l.depth()]++], encode_levelfun(l));
    }
    for (std::size_t k = 0; k <= 3; ++k) {
      rec.instance();
      const bool fast = cover::tower_cover_decide(region, k).covered;
      const bool slow = brute_force_cover(vals, k);
      rec.expect(fast == slow, [&] { return region_to_text(region) + "k=" + std::to_string(k); });
    }
    if (pick.size() == 6) return;
    for (std::size_t i = from; i < u; ++i) {
      pick.push_back(i);
      visit(i + 1);
      pick.pop_back();
    }
  };
  visit(0);
}

void check_f3_dispatch(const SuiteOptions& opts, Recorder& rec) {
  std::mt19937_64 rng(opts.seed ^ 0x6633ULL);
  const std::size_t n = opts.horizon;
  std::vector<StreamFun> case1 = {StreamFun::levelconst({HfSet()})};
  while (case1.size() < 10) case1.push_back(random_table(rng, n, 1 + rng() % 4));
  const HfSet bad = HfSet::make({HfSet(), HfSet::make({HfSet()})});
  for (const auto& f : case1) {
    rec.instance();
    const con::F3Result r = con::f3star(f, n);
    if (r.dispatch != con::F3Dispatch::kCase1 || !r.stream) {
      rec.fail(to_text(f) + " dispatched " + con::to_string(r.dispatch));
      continue;
    }
    const con::GClassification c = con::classify_g(*r.stream, n);
    bool recovered = c.recovered.ok();
    for (std::size_t j = 0; recovered && j < c.recovered.tower.size(); ++j) {
      recovered = c.recovered.tower[j] == restrict(f, j + 3);
    }
    rec.expect(!c.g2.is_refuted() && recovered,
               [&] { return to_text(f) + " output " + to_string(c.g2) + " " + c.recovered.describe(); });

    // Fault injection: a non-level-function value on a node off the branch.
    const BinStr eta = branch_node(f, n);
    std::optional<BinStr> target;
    for (const auto& v : nodes_of_length(3)) {
      if (!v.is_prefix_of(eta) && is_levelfun_of_depth(stream_eval(*r.stream, v), 3)) {
        target = v;
        break;
      }
    }
    if (!target) continue;
    rec.instance();
    const StreamFun faulty = StreamFun::patch(*r.stream, NodeSet::finite({*target}), StreamFun::table(bad));
    const con::GClassification fc = con::classify_g(faulty, n);
    rec.expect(fc.g2.is_refuted() && !fc.g2.witness.empty(),
               [&] { return "fault at \"" + target->str() + "\" in " + to_text(faulty) + " gave " + to_string(fc.g2); });
  }
  for (std::size_t i = 0; i < 5; ++i) {
    rec.instance();
    const StreamFun f = f1_of(random_table(rng, n, 1 + rng() % 4));
    const con::F3Result r = con::f3star(f, n);
    bool via_k1 = false;
    for (const auto& line : r.trace) via_k1 = via_k1 || line.find("k=1") != std::string::npos;
    rec.expect(r.dispatch == con::F3Dispatch::kNotInH3 && via_k1,
               [&] { return to_text(f) + " dispatched " + con::to_string(r.dispatch); });
  }
}

void check_serialization(const SuiteOptions& opts, Recorder& rec) {
  std::mt19937_64 rng(opts.seed ^ 0x74657874ULL);
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < 10; ++i) {
    const StreamFun f = random_table(rng, 4, rng() % 4);
    texts.push_back(to_text(f));
    texts.push_back(to_text(con::patch_build(f, random_conforming_w(rng, f))));
    texts.push_back(to_literal(small_value(rng, 1u << 12)));
  }
  texts.push_back(to_text(StreamFun::levelconst({HfSet(), HfSet::make({HfSet()})})));
  texts.push_back(to_text(NodeSet::finite({BinStr(""), BinStr("0110")})));
  for (const auto& t : texts) {
    rec.instance();
    const std::string once = canonicalize(t);
    rec.expect(once == t && canonicalize(once) == once, [&] { return t; });
  }
}

void check_restriction(const SuiteOptions& opts, Recorder& rec) {
  std::mt19937_64 rng(opts.seed ^ 0x7265737472ULL);
  for (std::size_t i = 0; i < 50; ++i) {
    rec.instance();
    const StreamFun f = random_table(rng, opts.horizon, 1 + rng() % 4);
    const StreamFun g = f1_of(f);
    for (std::size_t n = 1; n <= opts.horizon; ++n) {
      const LevelFun top = restrict(f, n);
      for (std::size_t m = 0; m <= n; ++m) {
        rec.expect(top.restrict(m) == restrict(f, m) && restrict(f, m).restricts(top),
                   [&] { return to_text(f) + " depths " + std::to_string(m) + "<" + std::to_string(n); });
      }
      const HfSet code = encode_levelfun(top);
      for (const auto& v : nodes_of_length(n)) {
        rec.expect(stream_eval(g, v) == code, [&] { return to_text(f) + " F1 at \"" + v.str() + "\""; });
      }
    }
  }
}

void check_cover_monotone(const SuiteOptions& opts, Recorder& rec) {
  std::mt19937_64 rng(opts.seed ^ 0x6d6f6e6fULL);
  std::vector<LevelFun> universe;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (auto& l : path_levelfuns(d)) universe.push_back(std::move(l));
  }
  for (std::size_t i = 0; i < 200; ++i) {
    rec.instance();
    std::map<BinStr, HfSet> region;
    std::vector<std::size_t> used(4, 0);
    for (std::size_t j = 0, count = 1 + rng() % 8; j < count; ++j) {
      const LevelFun& l = universe[rng() % universe.size()];
      if (used[l.depth()] < (std::size_t{1} << l.depth())) {
        region.emplace(nodes_of_length(l.depth())[used[l.depth()]++], encode_levelfun(l));
      }
    }
    std::map<BinStr, HfSet> sub = region;
    if (!sub.empty()) sub.erase(std::next(sub.begin(), static_cast<long>(rng() % sub.size())));
    for (std::size_t k = 0; k <= 4; ++k) {
      const bool here = cover::tower_cover_decide(region, k).covered;
      rec.expect(!here || cover::tower_cover_decide(region, k + 1).covered,
                 [&] { return region_to_text(region) + "k=" + std::to_string(k) + " not monotone in k"; });
      rec.expect(!here || cover::tower_cover_decide(sub, k).covered,
                 [&] { return region_to_text(region) + "k=" + std::to_string(k) + " subregion uncovered"; });
    }
  }
}

struct CheckDef {
  const char* name;
  const char* anchor;
  void (*run)(const SuiteOptions&, Recorder&);
};

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {"hf-roundtrip", "Ackermann coding is a bijection on HF sets", check_hf_roundtrip},
      {"branch-injectivity", "branch codes are injective and read only earlier nodes", check_branch_injectivity},
      {"majority-decoding", "patched streams differ from F1(f) on at most n nodes of length n; the decoder returns f", check_majority},
      {"x4-deficiency", "at most one node per level lies outside the apparent X4 set", check_x4},
      {"decoder-uniqueness", "exactly one depth-3 tower wins the majority vote", check_uniqueness},
      {"pair-finiteness", "two patched streams from distinct sources agree only below the computed bound", check_pair_finiteness},
      {"ed-family", "a sample of the final family is pairwise eventually different", check_ed_family},
      {"ramsey-homogeneity", "the extracted set is homogeneous, minimal and deterministic", check_ramsey},
      {"tower-cover-oracle", "chain-cover decision matches brute-force tower assignment", check_tower_cover},
      {"f3-dispatch", "Case-I outputs classify as patched streams; single towers are excluded; faults are refuted", check_f3_dispatch},
      {"serialization", "parse and print reach a byte-identical fixed point", check_serialization},
      {"restriction-coherence", "truncations restrict coherently and F1 is level constant", check_restriction},
      {"tower-cover-monotone", "coverability is monotone in k and in the region", check_cover_monotone},
  };
  return defs;
}

}  // namespace

StreamFun random_table(std::mt19937_64& rng, std::size_t depth, std::size_t exceptions,
                       std::uint64_t value_codes) {
  std::map<BinStr, HfSet> exc;
  for (std::size_t i = 0; i < exceptions && depth > 0; ++i) {
    // Exceptions never repeat the default, so distinct tables are distinct functions.
    exc[random_node(rng, rng() % depth)] = ack_decode(BigInt(1 + rng() % (value_codes - 1)));
  }
  return StreamFun::table(HfSet(), std::move(exc));
}

NodeSet random_conforming_w(std::mt19937_64& rng, const StreamFun& f) {
  const std::size_t start = rng() % 4;
  const std::size_t step = 1 + rng() % 3;
  const std::size_t tail = rng() % 3;
  NodeSet family = NodeSet::branch_off(f, start, step, tail);
  if (rng() % 4 != 0) return family;
  std::vector<BinStr> kept;
  for (const auto& v : family.members_below(9)) {
    if (rng() & 1) kept.push_back(v);
  }
  return NodeSet::finite(std::move(kept));
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

std::string SuiteReport::to_text(bool with_timing) const {
  std::ostringstream out;
  out << "suite seed=" << seed << " horizon=" << horizon << " checks=" << checks.size() << '\n';
  for (const auto& c : checks) {
    out << "check " << c.name << ' ' << (c.passed ? "PASS" : "FAIL") << " instances=" << c.instances
        << " anchor=\"" << c.anchor << '"';
    if (with_timing) {
      out.setf(std::ios::fixed);
      out.precision(3);
      out << " time=" << c.seconds << 's';
    }
    out << '\n';
    for (const auto& w : c.witnesses) out << "  witness " << w << '\n';
  }
  out << "result " << (passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& d : registry()) out.emplace_back(d.name);
  return out;
}

CheckRecord run_check(const std::string& name, const SuiteOptions& opts) {
  if (opts.horizon < 4 || opts.horizon > 8) {
    throw Error(ErrorKind::kInvalidArgument, "suite horizon must lie in 4..8");
  }
  for (const auto& d : registry()) {
    if (name != d.name) continue;
    CheckRecord rec;
    rec.name = d.name;
    rec.anchor = d.anchor;
    Recorder r(rec);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      d.run(opts, r);
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown check " + name);
}

SuiteReport run_verify_suite(const SuiteOptions& opts) {
  SuiteReport report;
  report.seed = opts.seed;
  report.horizon = opts.horizon;
  for (const auto& name : check_names()) report.checks.push_back(run_check(name, opts));
  return report;
}

}  // namespace medforge::suite
