#include <algorithm>

#include "construction_internal.hpp"
#include "medforge/branch.hpp"
#include "medforge/construction.hpp"

namespace medforge::construction {

using detail::quoted;

namespace {

bool contains(const std::vector<BinStr>& sorted, const BinStr& node) {
  return std::binary_search(sorted.begin(), sorted.end(), node);
}

Claim3Result claim3_from(const StreamFun& g1, const GClassification& c1, const StreamFun& g2,
                         const GClassification& c2, std::size_t horizon) {
  Claim3Result out;
  const std::size_t top = horizon - 1;
  if (c1.recovered.at_depth(top) == c2.recovered.at_depth(top)) {
    out.same_f = true;
    out.verdict = Verdict::refuted("SAME_F");
    return out;
  }
  std::size_t bound = 0;
  while (c1.recovered.at_depth(bound) == c2.recovered.at_depth(bound)) ++bound;

  const std::size_t split =
      branch_split(*c1.candidate, *c2.candidate, limits::kMaxSplitBits).value_or(limits::kMaxSplitBits);
  const GClassification* cs[] = {&c1, &c2};
  for (const auto* c : cs) {
    const BinStr ball = branch_node(*c->candidate, split + 1);
    for (const auto& v : c->w) {
      if (!ball.is_prefix_of(v)) bound = std::max(bound, v.size() + 1);
    }
  }
  std::vector<BinStr> only1, only2;
  for (const auto& v : eq_dif_nodes(g1, g2, horizon).eq) {
    if (v.size() < bound) continue;
    out.late_agreements.push_back(v);
    const bool in1 = contains(c1.w, v);
    const bool in2 = contains(c2.w, v);
    if (in1 && !in2) {
      only1.push_back(v);
    } else if (in2 && !in1) {
      only2.push_back(v);
    } else {
      out.bound = bound;
      out.verdict = Verdict::refuted("agreement at " + quoted(v) + " outside w1 xor w2");
      return out;
    }
  }
  for (const auto* side : {&only1, &only2}) {
    if (side->size() > 1) {
      out.bound = bound;
      out.verdict = Verdict::refuted("two agreements " + quoted((*side)[0]) + " and " + quoted((*side)[1]) +
                                     " inside one w");
      return out;
    }
  }
  for (const auto* side : {&only1, &only2}) {
    for (const auto& v : *side) bound = std::max(bound, v.size() + 1);
  }
  out.bound = bound;
  out.verdict = Verdict::consistent(horizon);
  return out;
}

}  // namespace

Claim3Result claim3_bound(const StreamFun& g1, const StreamFun& g2, std::size_t horizon) {
  const GClassification c1 = classify_g(g1, horizon);
  const GClassification c2 = classify_g(g2, horizon);
  if (!c1.recovered.ok() || !c2.recovered.ok()) {
    Claim3Result out;
    out.verdict = Verdict::refuted(std::string("source not recoverable: ") +
                                   (c1.recovered.ok() ? c2.recovered.describe() : c1.recovered.describe()));
    return out;
  }
  return claim3_from(g1, c1, g2, c2, horizon);
}

bool FamilyReport::clean() const {
  return std::none_of(pairs.begin(), pairs.end(), [](const PairReport& p) { return p.flagged; });
}

FamilyReport family_ed_check(const std::vector<StreamFun>& fs, std::size_t horizon) {
  std::vector<GClassification> cls;
  for (const auto& f : fs) cls.push_back(classify_g(f, horizon));
  FamilyReport out;
  for (std::size_t a = 0; a < fs.size(); ++a) {
    for (std::size_t b = a + 1; b < fs.size(); ++b) {
      PairReport p;
      p.a = a;
      p.b = b;
      const EqDif ed = eq_dif_nodes(fs[a], fs[b], horizon);
      p.agreements = ed.eq.size();
      for (const auto& v : ed.eq) p.top_agreement = std::max(p.top_agreement, v.size() + 1);
      if (ed.dif.empty()) {
        p.flagged = true;
        p.reason = "identical on the horizon";
      } else if (cls[a].recovered.ok() && cls[b].recovered.ok()) {
        const Claim3Result r = claim3_from(fs[a], cls[a], fs[b], cls[b], horizon);
        p.bound = r.bound;
        if (r.same_f) {
          p.flagged = true;
          p.reason = "SAME_F";
        } else if (r.verdict.is_refuted()) {
          p.flagged = true;
          p.reason = r.verdict.witness;
        }
      } else if (p.top_agreement == horizon) {
        p.flagged = true;
        p.reason = "agreement at the top level";
      }
      out.pairs.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace medforge::construction
