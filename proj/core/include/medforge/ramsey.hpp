#pragma once

// Deterministic extraction of an infinite homogeneous set for a 2-coloring of
// pairs of naturals.
//
// With A_n = {k ≥ n : R(m,k) = c_m for all m < n}, the color c_n is 0 when
// infinitely many k > n in A_n have R(n,k) = 0 and 1 otherwise. Then
// n_0 = 0 and n_i = min(A_{n_{i-1}+1} ∩ (n_{i-1}, ∞)), so R(n_i, n_j) = c_{n_i}
// for all i < j. Keeping the n_i whose color is the least one occurring
// infinitely often yields a homogeneous set.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace medforge::ramsey {

struct Constraint {
  std::uint64_t m = 0;
  int color = 0;
};

class Coloring {
 public:
  virtual ~Coloring() = default;
  /// R(m,k) for m < k.
  virtual int color(std::uint64_t m, std::uint64_t k) const = 0;
  /// Are there infinitely many k > lower with R(m_j, k) = c_j for every
  /// constraint. Finite samples answer whether the requested colour keeps at
  /// least as many admissible points as the opposite one.
  virtual bool infinitely_many(std::span<const Constraint> constraints, std::uint64_t lower) const = 0;
  /// Number of points for finite samples; nullopt for colorings of all of ω.
  virtual std::optional<std::uint64_t> sample_size() const { return std::nullopt; }
  virtual std::string name() const = 0;
};

/// R ≡ c.
std::unique_ptr<Coloring> constant_coloring(int c);
/// R(m,k) = m mod 2.
std::unique_ptr<Coloring> min_parity_coloring();
/// R(m,k) = 1 iff k − m ≥ t.
std::unique_ptr<Coloring> threshold_coloring(std::uint64_t t);
/// R(m,k) = matrix[m mod P][k mod Q] for k ≥ offset; below the offset the
/// color is (m + k) mod 2. `matrix` is P rows of Q entries in {0,1}.
std::unique_ptr<Coloring> eventually_periodic_coloring(std::vector<std::vector<int>> matrix,
                                                       std::uint64_t offset = 0);

/// A coloring known only on the points 0..size-1, given as a symmetric
/// table (entries with m ≥ k ignored).
class FiniteSample final : public Coloring {
 public:
  explicit FiniteSample(std::vector<std::vector<int>> table);
  int color(std::uint64_t m, std::uint64_t k) const override;
  bool infinitely_many(std::span<const Constraint> constraints, std::uint64_t lower) const override;
  std::optional<std::uint64_t> sample_size() const override { return table_.size(); }
  std::string name() const override { return "sample(" + std::to_string(table_.size()) + ")"; }

 private:
  std::vector<std::vector<int>> table_;
};

/// Parses "constant:c", "minparity", "threshold:t",
/// "periodic:<rows separated by '/'>[@offset]" (e.g. "periodic:01/10@3").
std::unique_ptr<Coloring> parse_coloring(const std::string& spec);

struct HomogeneousResult {
  std::vector<std::uint64_t> elements;  // homogeneous, increasing
  int color = 0;                        // i(*)
  /// False when a finite sample ran out before `count` elements.
  bool complete = true;
  std::vector<std::string> trace;       // rho[n]=b, n[i]=k, istar=c
};

/// First `count` elements of the homogeneous set. For infinite colorings the
/// color occurring infinitely often among c_{n_i} is read off a window of
/// `window` selections (at least 4·count + 64); finite samples use the color
/// that keeps more elements.
HomogeneousResult homogeneous_prefix(const Coloring& r, std::size_t count, bool trace = false,
                                     std::size_t window = 0);

}  // namespace medforge::ramsey
