// Acceptance battery: one PASS/FAIL line per criterion, with the time limit
// and instance counts pinned here. Exit status is nonzero iff a line fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "medforge/branch.hpp"
#include "medforge/construction.hpp"
#include "medforge/cover.hpp"
#include "medforge/error.hpp"
#include "medforge/hf.hpp"
#include "medforge/ramsey.hpp"
#include "medforge/suite.hpp"
#include "medforge/text.hpp"

namespace {

using namespace medforge;
namespace con = medforge::construction;
namespace fs = std::filesystem;

constexpr std::size_t kHorizon = 8;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// ------------------------------------------------------------------ oracles

std::uint64_t ref_code(const HfSet& x) {
  std::uint64_t total = 0;
  for (const auto& m : x.members()) total += std::uint64_t{1} << ref_code(m);
  return total;
}

HfSet ref_decode(std::uint64_t n) {
  std::vector<HfSet> items;
  for (std::uint64_t bit = 0; bit < 64; ++bit) {
    if (n >> bit & 1) items.push_back(ref_decode(bit));
  }
  return HfSet::make(items);
}

bool recovers(const con::RecoverResult& r, const StreamFun& f) {
  if (!r.ok()) return false;
  for (std::size_t j = 0; j < r.tower.size(); ++j) {
    if (!(r.tower[j] == restrict(f, j + 3))) return false;
  }
  return true;
}

struct Instance {
  StreamFun f;
  NodeSet w;
  StreamFun g;
};

std::vector<Instance> patched_instances(std::uint64_t seed, std::size_t depth, std::size_t count,
                                        std::uint64_t value_codes) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    StreamFun f = suite::random_table(rng, depth, 1 + rng() % 4, value_codes);
    NodeSet w = suite::random_conforming_w(rng, f);
    out.push_back(Instance{f, w, con::patch_build(f, w)});
  }
  return out;
}

bool chain_partition_exists(const std::vector<LevelFun>& vals, std::size_t k) {
  if (vals.empty()) return true;
  if (k == 0) return false;
  std::vector<std::size_t> group(vals.size(), 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < vals.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < vals.size(); ++j) {
        if (group[i] == group[j]) ok = vals[i].restricts(vals[j]) || vals[j].restricts(vals[i]);
      }
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < group.size() && ++group[i] == k) group[i++] = 0;
    if (i == group.size()) return false;
  }
}

// ------------------------------------------------------------------ criteria

Outcome hf_round_trip() {
  Outcome o;
  for (std::uint64_t n = 0; n < 4096 && o.ok; ++n) {
    const HfSet x = ref_decode(n);
    if (!(ack_decode(BigInt(n)) == x) || ack_code(x) != BigInt(n) || ack_code(ack_decode(BigInt(n))) != BigInt(n)) {
      o.fail("code " + std::to_string(n));
    }
  }
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
  const auto rank1 = subsets(atoms);
  const auto rank2 = subsets(rank1);
  std::size_t checked = 0;
  auto check = [&](const HfSet& x) {
    ++checked;
    if (!(ack_decode(ack_code(x)) == x) || !(parse_hf(to_literal(x)) == x)) o.fail("set " + to_literal(x));
  };
  for (const auto& x : rank1) check(x);
  for (const auto& x : rank2) check(x);
  for (std::size_t i = 0; i < rank2.size(); ++i) {
    for (std::size_t j = i; j < rank2.size(); ++j) check(HfSet::make({rank2[i], rank2[j]}));
  }
  if (o.ok) o.detail = "4096 codes, " + std::to_string(checked) + " structured sets";
  return o;
}

Outcome coding_injectivity() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  std::map<std::string, StreamFun> distinct;
  while (distinct.size() < 200) {
    StreamFun f = suite::random_table(rng, 3, 1 + rng() % 4, 8);
    distinct.emplace(to_text(f), f);
  }
  std::set<std::string> codes;
  std::uint64_t worst = 0;
  for (const auto& [text, f] : distinct) {
    if (!codes.insert(branch_bits(f, 64)).second) o.fail("collision at " + text);
    for (std::size_t t = 1; t <= 64; ++t) {
      QueryCounter qc;
      branch_bits(f, t, &qc);
      if (qc.max_index > t) o.fail(text + " bit " + std::to_string(t) + " read node " + std::to_string(qc.max_index));
      worst = std::max(worst, qc.max_index);
    }
  }
  if (o.ok) o.detail = "200 streams, distinct 64-bit codes, max node index read " + std::to_string(worst);
  return o;
}

Outcome majority_decoding() {
  Outcome o;
  std::size_t worst = 0;
  for (const auto& in : patched_instances(kSeed + 3, kHorizon, 200, 16)) {
    const StreamFun base = f1_of(in.f);
    for (std::size_t n = 3; n <= kHorizon; ++n) {
      std::size_t dif = 0;
      for (const auto& v : nodes_of_length(n)) dif += !(stream_eval(in.g, v) == stream_eval(base, v));
      worst = std::max(worst, dif);
      if (dif > n) o.fail(to_text(in.g) + " level " + std::to_string(n));
    }
    if (!recovers(con::recover_f(in.g, kHorizon), in.f)) o.fail("decoder on " + to_text(in.g));
  }
  if (o.ok) o.detail = "200 instances, largest |dif| on a level " + std::to_string(worst);
  return o;
}

Outcome x4_deficiency() {
  Outcome o;
  std::size_t total_missing = 0;
  for (const auto& in : patched_instances(kSeed + 3, kHorizon, 200, 16)) {
    const con::ApparentX x = con::apparent_x(in.g, kHorizon);
    std::vector<std::size_t> inside(kHorizon, 0);
    for (const auto& v : x.x4) ++inside[v.size()];
    for (std::size_t n = 0; n < kHorizon; ++n) {
      const std::size_t missing = (std::size_t{1} << n) - inside[n];
      total_missing += missing;
      if (missing > 1) o.fail(to_text(in.g) + " level " + std::to_string(n));
    }
  }
  if (o.ok) o.detail = "200 instances, " + std::to_string(total_missing) + " nodes outside X4 in total";
  return o;
}

Outcome uniqueness() {
  Outcome o;
  const HfSet e;
  const HfSet one = HfSet::make({e});
  std::vector<LevelFun> towers;
  std::vector<HfSet> codes;
  for (std::uint64_t mask = 0; mask < 128; ++mask) {
    std::vector<HfSet> values;
    for (int i = 0; i < 7; ++i) values.push_back(mask >> i & 1 ? one : e);
    towers.emplace_back(3, values);
    codes.push_back(encode_levelfun(towers.back()));
  }
  for (const auto& in : patched_instances(kSeed + 5, 3, 200, 2)) {
    std::size_t compatible = 0, which = 0;
    for (std::size_t t = 0; t < towers.size(); ++t) {
      std::size_t hits = 0;
      for (const auto& v : nodes_of_length(3)) hits += stream_eval(in.g, v) == codes[t];
      if (hits > 4) {
        ++compatible;
        which = t;
      }
    }
    if (compatible != 1 || !(towers[which] == restrict(in.f, 3))) {
      o.fail(to_text(in.g) + " has " + std::to_string(compatible) + " compatible towers");
    }
  }
  if (o.ok) o.detail = "200 instances x 128 towers, exactly one winner each";
  return o;
}

Outcome pair_finiteness() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 7);
  std::size_t pairs = 0, mixed = 0;
  auto check = [&](const StreamFun& a, const StreamFun& b) {
    const con::Claim3Result r = con::claim3_bound(a, b, kHorizon);
    if (r.same_f || r.verdict.is_refuted()) {
      o.fail(to_text(a) + " vs " + to_text(b) + ": " + to_string(r.verdict));
      return;
    }
    for (const auto& v : eq_dif_nodes(a, b, kHorizon).eq) {
      if (v.size() >= r.bound) o.fail("agreement at \"" + v.str() + "\" above bound " + std::to_string(r.bound));
    }
  };
  while (pairs < 50) {
    const StreamFun f1 = suite::random_table(rng, kHorizon, 1 + rng() % 4);
    const StreamFun f2 = suite::random_table(rng, kHorizon, 1 + rng() % 4);
    const StreamFun f0 = suite::random_table(rng, kHorizon, 1 + rng() % 4);
    if (restrict(f1, kHorizon - 1) == restrict(f2, kHorizon - 1)) continue;
    const StreamFun g1 = con::patch_build(f1, suite::random_conforming_w(rng, f1));
    const StreamFun g2 = con::patch_build(f2, suite::random_conforming_w(rng, f2));
    check(g1, g2);
    ++pairs;
    if (!(restrict(f0, kHorizon - 1) == restrict(f1, kHorizon - 1))) {
      check(g1, f1_of(f0));
      ++mixed;
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " pairs, " + std::to_string(mixed) + " mixed pairs";
  return o;
}

Outcome ed_family() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 11);
  std::vector<StreamFun> members;
  auto fresh = [&](const StreamFun& g) {
    for (const auto& m : members) {
      if (eq_dif_nodes(m, g, kHorizon).dif.empty()) return false;
    }
    return true;
  };
  while (members.size() < 10) {
    const StreamFun f = suite::random_table(rng, kHorizon, 1 + rng() % 4);
    const con::F3Result r = con::f3star(f, kHorizon);
    if (r.dispatch != con::F3Dispatch::kCase1 || !r.stream) {
      o.fail("Case-I source dispatched " + std::string(con::to_string(r.dispatch)));
      return o;
    }
    if (fresh(*r.stream)) members.push_back(*r.stream);
  }
  while (members.size() < 15) {
    const StreamFun f = f1_of(suite::random_table(rng, kHorizon, 1 + rng() % 4));
    if (con::f3star(f, kHorizon).dispatch != con::F3Dispatch::kNotInH3) {
      o.fail("single-tower source not excluded: " + to_text(f));
      return o;
    }
    if (fresh(f1_of(f))) members.push_back(f1_of(f));
  }
  const con::FamilyReport report = con::family_ed_check(members, kHorizon);
  for (const auto& p : report.pairs) {
    if (p.flagged) o.fail("pair " + std::to_string(p.a) + "," + std::to_string(p.b) + ": " + p.reason);
    if (p.bound && p.top_agreement > *p.bound) o.fail("agreement above bound in pair " + std::to_string(p.a));
  }
  if (o.ok) o.detail = "15 members, " + std::to_string(report.pairs.size()) + " pairs clean";
  return o;
}

Outcome ramsey_extractor() {
  Outcome o;
  for (const char* spec : {"constant:0", "constant:1", "minparity", "threshold:3", "periodic:01/10@3"}) {
    const auto r = ramsey::parse_coloring(spec);
    const auto a = ramsey::homogeneous_prefix(*r, 16, true);
    const auto b = ramsey::homogeneous_prefix(*r, 16, true);
    if (a.elements.size() != 16) o.fail(std::string(spec) + " returned too few elements");
    if (a.elements != b.elements || a.trace != b.trace) o.fail(std::string(spec) + " is not deterministic");
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
      for (std::size_t j = i + 1; j < a.elements.size(); ++j) {
        if (r->color(a.elements[i], a.elements[j]) != a.color) o.fail(std::string(spec) + " not homogeneous");
      }
    }
    if (std::string(spec) == "minparity") {
      for (std::size_t i = 0; i < a.elements.size(); ++i) {
        if (a.elements[i] != 2 * i) o.fail("minparity output is not 0,2,4,...");
      }
    }
  }
  if (o.ok) o.detail = "5 colorings x 16 elements";
  return o;
}

Outcome tower_cover_oracle() {
  Outcome o;
  const HfSet e;
  const HfSet one = HfSet::make({e});
  // Level functions over {∅,{∅}} fixed by their entries on ε, 0, 00.
  std::vector<LevelFun> universe;
  for (std::size_t depth = 1; depth <= 3; ++depth) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << depth); ++mask) {
      std::vector<HfSet> values(static_cast<std::size_t>(nodes_below(depth)), e);
      for (std::size_t d = 0; d < depth; ++d) {
        if (mask >> d & 1) values[static_cast<std::size_t>(index_of_node(BinStr(std::string(d, '0'))))] = one;
      }
      universe.emplace_back(depth, values);
    }
  }
  std::size_t instances = 0;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> visit = [&](std::size_t from) {
    std::vector<LevelFun> vals;
    std::map<BinStr, HfSet> region;
    std::vector<std::size_t> used(4, 0);
    for (auto i : pick) {
      vals.push_back(universe[i]);
      const std::size_t d = universe[i].depth();
      region.emplace(nodes_of_length(d)[used[d]++], encode_levelfun(universe[i]));
    }
    for (std::size_t k = 0; k <= 3; ++k) {
      ++instances;
      if (cover::tower_cover_decide(region, k).covered != chain_partition_exists(vals, k)) {
        o.fail("disagreement at k=" + std::to_string(k) + " on " + region_to_text(region));
      }
    }
    if (pick.size() == 6) return;
    for (std::size_t i = from; i < universe.size(); ++i) {
      pick.push_back(i);
      visit(i + 1);
      pick.pop_back();
    }
  };
  visit(0);
  if (o.ok) o.detail = std::to_string(instances) + " instances, zero disagreements";
  return o;
}

Outcome f3_dispatch() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 13);
  const HfSet bad = HfSet::make({HfSet(), HfSet::make({HfSet()})});
  std::vector<StreamFun> case1 = {StreamFun::levelconst({HfSet()})};
  while (case1.size() < 20) case1.push_back(suite::random_table(rng, kHorizon, 1 + rng() % 4));
  std::size_t faults = 0;
  for (const auto& f : case1) {
    const con::F3Result r = con::f3star(f, kHorizon);
    if (r.dispatch != con::F3Dispatch::kCase1 || !r.stream) {
      o.fail(to_text(f) + " dispatched " + con::to_string(r.dispatch));
      continue;
    }
    const con::GClassification c = con::classify_g(*r.stream, kHorizon);
    if (c.g2.is_refuted() || !recovers(c.recovered, f)) o.fail("output of " + to_text(f) + ": " + to_string(c.g2));
    const BinStr eta = branch_node(f, kHorizon);
    for (const auto& v : nodes_of_length(3)) {
      if (v.is_prefix_of(eta) || !is_levelfun_of_depth(stream_eval(*r.stream, v), 3)) continue;
      const StreamFun faulty = StreamFun::patch(*r.stream, NodeSet::finite({v}), StreamFun::table(bad));
      const con::GClassification fc = con::classify_g(faulty, kHorizon);
      if (!fc.g2.is_refuted() || fc.g2.witness.empty()) o.fail("fault at \"" + v.str() + "\" not refuted");
      ++faults;
      break;
    }
  }
  for (int i = 0; i < 5; ++i) {
    const StreamFun f = f1_of(suite::random_table(rng, kHorizon, 1 + rng() % 4));
    const con::F3Result r = con::f3star(f, kHorizon);
    const bool via_k1 = std::any_of(r.trace.begin(), r.trace.end(),
                                    [](const std::string& l) { return l.find("k=1") != std::string::npos; });
    if (r.dispatch != con::F3Dispatch::kNotInH3 || !via_k1) o.fail(to_text(f) + " not excluded via k=1");
  }
  if (faults == 0) o.fail("no fault injected");
  if (o.ok) o.detail = "20 Case-I, 5 single-tower, " + std::to_string(faults) + " faults refuted";
  return o;
}

Outcome serialization(const fs::path& corpus) {
  Outcome o;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 30) o.fail("corpus has " + std::to_string(files.size()) + " files");
  for (const auto& p : files) {
    std::string text = read_file(p.string());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    try {
      const std::string once = canonicalize(text);
      if (once != text || canonicalize(once) != once) o.fail(p.filename().string() + " is not a fixed point");
    } catch (const Error& e) {
      o.fail(p.filename().string() + ": " + e.what());
    }
  }
  if (o.ok) o.detail = std::to_string(files.size()) + " files byte-identical";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: medforge_acceptance <corpus-dir>\n";
    return 2;
  }
  const fs::path corpus = argv[1];
  const std::vector<Criterion> criteria = {
      {1, "hf kernel round trip", 1.0, hf_round_trip},
      {2, "coding injectivity and continuity", 5.0, coding_injectivity},
      {3, "majority bound and exact decoding", 30.0, majority_decoding},
      {4, "X4 deficiency at most one per level", 30.0, x4_deficiency},
      {5, "uniqueness of the decoded tower", 10.0, uniqueness},
      {6, "pair agreements below the bound", 30.0, pair_finiteness},
      {7, "family sample eventually different", 30.0, ed_family},
      {8, "Ramsey extractor", 1.0, ramsey_extractor},
      {9, "tower cover oracle equivalence", 30.0, tower_cover_oracle},
      {10, "F3 dispatch sanity", 60.0, f3_dispatch},
      {11, "serialization fixed point", 5.0, [&] { return serialization(corpus); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) o.fail("time limit exceeded");
    all = all && o.ok;
    std::ostringstream line;
    line << "criterion " << std::setw(2) << c.id << ' ' << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  ["
         << std::fixed << std::setprecision(3) << secs << "s / " << std::setprecision(0) << c.limit_seconds << "s]  "
         << o.detail;
    std::cout << line.str() << '\n';
  }
  std::cout << (all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << '\n';
  return all ? 0 : 1;
}
