#pragma once

// End-to-end verification battery: deterministic instance generators plus
// brute-force checks for every combinatorial property of the construction.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "medforge/stream.hpp"

namespace medforge::suite {

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t horizon = 6;  // 4..8
  /// Fault injection: run the decoder with an unreachable majority threshold.
  bool corrupt_decoder = false;
};

struct CheckRecord {
  std::string name;
  std::string anchor;  // the property being checked
  std::size_t instances = 0;
  bool passed = true;
  std::vector<std::string> witnesses;  // serialized failing instances
  double seconds = 0;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  std::vector<CheckRecord> checks;

  bool passed() const;
  /// One line per check; `with_timing` appends wall time.
  std::string to_text(bool with_timing = true) const;
};

/// Names of all checks, in report order.
std::vector<std::string> check_names();

CheckRecord run_check(const std::string& name, const SuiteOptions& opts);
SuiteReport run_verify_suite(const SuiteOptions& opts);

// Instance generators shared with the tests.

/// A table stream with default ∅ and up to `exceptions` entries on nodes of
/// length < depth, values drawn from codes < value_codes.
StreamFun random_table(std::mt19937_64& rng, std::size_t depth, std::size_t exceptions,
                       std::uint64_t value_codes = 16);

/// A branch-off family over f's own branch code with random start, step and tail.
NodeSet random_conforming_w(std::mt19937_64& rng, const StreamFun& f);

}  // namespace medforge::suite
