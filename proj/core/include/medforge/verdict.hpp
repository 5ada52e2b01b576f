#pragma once

// Three-valued results for predicates that quantify over infinitely many
// nodes: REFUTED carries a finite witness, HOLDS means an exact limit query
// decided the predicate, CONSISTENT(N) means nothing contradicts it on 2^{<N}.

#include <cstddef>
#include <string>

namespace medforge {

enum class VerdictStatus { kRefuted, kHolds, kConsistent };

struct Verdict {
  VerdictStatus status = VerdictStatus::kConsistent;
  std::string witness;      // kRefuted
  std::size_t horizon = 0;  // kConsistent

  static Verdict refuted(std::string w) { return Verdict{VerdictStatus::kRefuted, std::move(w), 0}; }
  static Verdict holds() { return Verdict{VerdictStatus::kHolds, {}, 0}; }
  static Verdict consistent(std::size_t n) { return Verdict{VerdictStatus::kConsistent, {}, n}; }

  bool is_refuted() const { return status == VerdictStatus::kRefuted; }
  bool is_holds() const { return status == VerdictStatus::kHolds; }
  bool is_consistent() const { return status == VerdictStatus::kConsistent; }
};

/// How CONSISTENT verdicts count when reporting membership.
enum class MembershipPolicy { kPessimistic, kOptimistic };

inline bool counts_as_member(const Verdict& v, MembershipPolicy p = MembershipPolicy::kPessimistic) {
  return v.is_holds() || (v.is_consistent() && p == MembershipPolicy::kOptimistic);
}

/// "REFUTED(<witness>)", "HOLDS" or "CONSISTENT(<N>)".
inline std::string to_string(const Verdict& v) {
  switch (v.status) {
    case VerdictStatus::kRefuted:
      return "REFUTED(" + v.witness + ")";
    case VerdictStatus::kHolds:
      return "HOLDS";
    case VerdictStatus::kConsistent:
      return "CONSISTENT(" + std::to_string(v.horizon) + ")";
  }
  return {};
}

}  // namespace medforge
