#pragma once

// Membership tests for the G-families, the decoder g ↦ f_g, the patch
// builders and the F3* dispatch.
//
// Notation: F1(f) is f1_of(f); dif/eq are taken pointwise; η_f is the branch
// code of f; a "deviation node at level n" is any ν with ν ∩ η_f = η_f↾n that
// is not a prefix of η_f.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "medforge/stream.hpp"
#include "medforge/tree.hpp"
#include "medforge/verdict.hpp"

namespace medforge::construction {

// ---------------------------------------------------------------- X sets

struct ApparentX {
  std::vector<BinStr> x1, x2, x3, x4;  // length-lex
};

/// X1..X4 over 2^{<horizon}:
///   X1  g(ρ) is a level function of depth lg ρ
///   X2  ρ ∈ X1, every child (inside the horizon) is in X2 and g(ρ) ⊆ g(child)
///   X3  at most horizon − lg ρ nodes above ρ lie outside X2
///   X4  ρ ∈ X3 and no two incomparable nodes above ρ lie outside X2
ApparentX apparent_x(const StreamFun& g, std::size_t horizon);

// ---------------------------------------------------------------- decoder

enum class RecoverFailure { kNone, kNoMajority, kNotLevelFun, kIncoherent };

const char* to_string(RecoverFailure f);

struct DecoderOptions {
  /// Test hook: raises the majority threshold to 2^n so no level can pass.
  bool corrupt_threshold = false;
};

struct RecoverResult {
  RecoverFailure failure = RecoverFailure::kNone;
  std::size_t failed_level = 0;
  /// tower[j] is the recovered level function of depth j + 3.
  std::vector<LevelFun> tower;

  bool ok() const { return failure == RecoverFailure::kNone; }
  /// Recovered f↾2^{<n}, for n ≤ 3 + tower.size() − 1.
  LevelFun at_depth(std::size_t n) const;
  std::size_t top_depth() const { return tower.size() + 2; }
  std::string describe() const;
};

/// For n = 3..horizon, the value taken by more than 2^{n−1} of the nodes of
/// length n, decoded as a depth-n level function.
RecoverResult recover_f(const StreamFun& g, std::size_t horizon, DecoderOptions opts = {});

// ---------------------------------------------------------------- G-families

struct ClassifyOptions {
  DecoderOptions decoder;
  MembershipPolicy policy = MembershipPolicy::kPessimistic;
};

struct GClassification {
  Verdict g0;
  Verdict g1;
  Verdict g2;
  RecoverResult recovered;
  /// Presentation of f_g: exact when taken from g's own term, otherwise a
  /// table reproducing the recovered top level function.
  std::optional<StreamFun> candidate;
  bool candidate_exact = false;
  /// dif(g, F1(candidate)) ∩ 2^{<horizon}.
  std::vector<BinStr> w;

  bool in_g1(MembershipPolicy p = MembershipPolicy::kPessimistic) const { return counts_as_member(g1, p); }
  bool in_g2(MembershipPolicy p = MembershipPolicy::kPessimistic) const { return counts_as_member(g2, p); }
};

GClassification classify_g(const StreamFun& g, std::size_t horizon, ClassifyOptions opts = {});

/// PATCH(F1(f), w, f): f on w and F1(f) elsewhere.
StreamFun patch_build(const StreamFun& f, const NodeSet& w);

/// The node (η_f↾n)⌢(1−η_f(n)).
BinStr deviation_node(const StreamFun& f, std::size_t n);

// ---------------------------------------------------------------- F3*

struct TvStar {
  /// Does every ball η_f↾n contain a node whose value is not a level function
  /// of its depth. Exact unless `exact` is false.
  bool value = false;
  bool exact = false;
  /// When false: least m such that every ν ≥ η_f↾m has a level-function value.
  std::size_t m = 0;
  Verdict verdict;
};

/// Horizon reading when no exact answer exists: some node of 2^{<horizon}
/// above η_f↾(horizon−2) has a non-level-function value.
TvStar tv_star(const StreamFun& f, std::size_t horizon);

struct Case1Result {
  bool ok = false;
  std::string error;  // "NOT_CASE1(level n)" when !ok
  /// (level n, witness ν_{f,n}) for the levels found.
  std::vector<std::pair<std::size_t, BinStr>> witnesses;
  std::optional<StreamFun> stream;
  /// True when the output stream uses a branch-off family for all but finitely
  /// many levels, so it is correct beyond any horizon.
  bool exact = false;
};

/// Witness search covers lengths up to n + 1 + `extra` at level n.
Case1Result case1_build(const StreamFun& f, std::size_t count, std::size_t extra = 4);

enum class HkOutcome { kTower, kCase2Witness, kExhausted, kHorizonTooSmall };

const char* to_string(HkOutcome o);

struct HkStep {
  HkOutcome outcome = HkOutcome::kExhausted;
  /// Candidate nodes per level (level n, η_{k,n}), in level order.
  std::vector<std::pair<std::size_t, BinStr>> candidates;
  /// Levels kept by the homogeneous-set extraction.
  std::vector<std::size_t> selected_levels;
  /// kTower: the union of the kept values.
  std::optional<LevelFun> tower_top;
  std::optional<StreamFun> tower;
  bool tower_exact = false;
  /// kCase2Witness: nodes whose values are pairwise ⊆-incomparable.
  std::vector<BinStr> case2_nodes;
  /// kExhausted: the level n* from which no candidate exists.
  std::size_t exhausted_at = 0;
};

/// One step of the h_k induction over levels [m(f), horizon−1).
HkStep hk_step(const StreamFun& f, const std::vector<StreamFun>& prior, std::size_t horizon);

struct IndexedFamily {
  enum class Kind { kPeriodic, kLadder };
  Kind kind = Kind::kPeriodic;
  /// kPeriodic: h_k = prefix[k] for k < |prefix|, then cycle repeats.
  std::vector<StreamFun> prefix;
  std::vector<StreamFun> cycle;
  /// kLadder: h_k = base except value vN(k) at `node`.
  std::optional<StreamFun> base;
  BinStr node;

  static IndexedFamily periodic(std::vector<StreamFun> prefix, std::vector<StreamFun> cycle);
  static IndexedFamily ladder(StreamFun base, BinStr node);
  StreamFun member(std::size_t k) const;
};

struct HStarResult {
  /// Some j ≤ horizon has infinitely many distinct h_k↾2^{<j}; `j` is the least.
  bool tv3_true = false;
  std::size_t j = 0;
  /// k(2) < k(3) < ... < k(horizon).
  std::vector<std::size_t> selected;
  std::optional<StreamFun> h_star;
};

HStarResult h_star_limit(const IndexedFamily& hs, std::size_t horizon);

enum class F3Dispatch { kCase1, kNotInH3, kCase2Witness, kTv3Builder, kHStarBuilder, kUndetermined, kUnsupported };

const char* to_string(F3Dispatch d);

struct F3Result {
  F3Dispatch dispatch = F3Dispatch::kUndetermined;
  std::optional<StreamFun> stream;
  /// False when the output was derived from horizon evidence only.
  bool exact = false;
  std::vector<std::string> trace;
};

struct F3Options {
  std::size_t k_max = 4;
};

F3Result f3star(const StreamFun& f, std::size_t horizon, F3Options opts = {});

// ---------------------------------------------------------------- finiteness

struct Claim3Result {
  bool same_f = false;
  std::size_t bound = 0;
  Verdict verdict;
  /// Agreements at levels ≥ the formula bound, before singletons were absorbed.
  std::vector<BinStr> late_agreements;
};

/// Bound b with eq(g1,g2) ∩ 2^{<horizon} ⊆ 2^{<b}: the first level where the
/// recovered sources differ, the levels of w-nodes off the two branch balls
/// past the branch split, and the at most one agreement inside each of
/// w1∖w2 and w2∖w1.
Claim3Result claim3_bound(const StreamFun& g1, const StreamFun& g2, std::size_t horizon);

struct PairReport {
  std::size_t a = 0, b = 0;
  std::size_t agreements = 0;       // |eq ∩ 2^{<horizon}|
  std::size_t top_agreement = 0;    // 1 + longest agreeing node, 0 if none
  std::optional<std::size_t> bound;
  bool flagged = false;
  std::string reason;
};

struct FamilyReport {
  std::vector<PairReport> pairs;
  bool clean() const;
};

FamilyReport family_ed_check(const std::vector<StreamFun>& fs, std::size_t horizon);

}  // namespace medforge::construction
