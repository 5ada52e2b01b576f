#include "medforge/ramsey.hpp"

#include <algorithm>

#include "medforge/error.hpp"

namespace medforge::ramsey {

namespace {

bool all_colors(std::span<const Constraint> cs, auto pred) {
  return std::all_of(cs.begin(), cs.end(), pred);
}

class ConstantColoring final : public Coloring {
 public:
  explicit ConstantColoring(int c) : c_(c) {}
  int color(std::uint64_t, std::uint64_t) const override { return c_; }
  bool infinitely_many(std::span<const Constraint> cs, std::uint64_t) const override {
    return all_colors(cs, [&](const Constraint& x) { return x.color == c_; });
  }
  std::string name() const override { return "constant:" + std::to_string(c_); }

 private:
  int c_;
};

class MinParityColoring final : public Coloring {
 public:
  int color(std::uint64_t m, std::uint64_t) const override { return static_cast<int>(m % 2); }
  bool infinitely_many(std::span<const Constraint> cs, std::uint64_t) const override {
    return all_colors(cs, [](const Constraint& x) { return x.color == static_cast<int>(x.m % 2); });
  }
  std::string name() const override { return "minparity"; }
};

class ThresholdColoring final : public Coloring {
 public:
  explicit ThresholdColoring(std::uint64_t t) : t_(t) {}
  int color(std::uint64_t m, std::uint64_t k) const override { return k - m >= t_ ? 1 : 0; }
  bool infinitely_many(std::span<const Constraint> cs, std::uint64_t) const override {
    return all_colors(cs, [](const Constraint& x) { return x.color == 1; });
  }
  std::string name() const override { return "threshold:" + std::to_string(t_); }

 private:
  std::uint64_t t_;
};

class PeriodicColoring final : public Coloring {
 public:
  PeriodicColoring(std::vector<std::vector<int>> matrix, std::uint64_t offset)
      : matrix_(std::move(matrix)), offset_(offset) {
    if (matrix_.empty() || matrix_[0].empty()) {
      throw Error(ErrorKind::kInvalidArgument, "periodic coloring needs a non-empty matrix");
    }
    for (const auto& row : matrix_) {
      if (row.size() != matrix_[0].size()) throw Error(ErrorKind::kInvalidArgument, "ragged periodic matrix");
      for (int v : row) {
        if (v != 0 && v != 1) throw Error(ErrorKind::kInvalidArgument, "colors must be 0 or 1");
      }
    }
  }
  int color(std::uint64_t m, std::uint64_t k) const override {
    if (k < offset_) return static_cast<int>((m + k) % 2);
    return matrix_[m % matrix_.size()][k % matrix_[0].size()];
  }
  bool infinitely_many(std::span<const Constraint> cs, std::uint64_t) const override {
    for (std::size_t r = 0; r < matrix_[0].size(); ++r) {
      if (all_colors(cs, [&](const Constraint& x) { return matrix_[x.m % matrix_.size()][r] == x.color; })) {
        return true;
      }
    }
    return false;
  }
  std::string name() const override {
    std::string out = "periodic:";
    for (std::size_t i = 0; i < matrix_.size(); ++i) {
      if (i) out += '/';
      for (int v : matrix_[i]) out += static_cast<char>('0' + v);
    }
    if (offset_) out += '@' + std::to_string(offset_);
    return out;
  }

 private:
  std::vector<std::vector<int>> matrix_;
  std::uint64_t offset_;
};

std::uint64_t parse_number(const std::string& s, const std::string& spec) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::kInvalidArgument, "bad number in coloring '" + spec + "'");
  }
  return std::stoull(s);
}

// Upper limit on how far past the previous element the next one is searched.
constexpr std::uint64_t kMaxGap = std::uint64_t{1} << 16;

}  // namespace

std::unique_ptr<Coloring> constant_coloring(int c) {
  if (c != 0 && c != 1) throw Error(ErrorKind::kInvalidArgument, "colors must be 0 or 1");
  return std::make_unique<ConstantColoring>(c);
}
std::unique_ptr<Coloring> min_parity_coloring() { return std::make_unique<MinParityColoring>(); }
std::unique_ptr<Coloring> threshold_coloring(std::uint64_t t) { return std::make_unique<ThresholdColoring>(t); }
std::unique_ptr<Coloring> eventually_periodic_coloring(std::vector<std::vector<int>> matrix,
                                                       std::uint64_t offset) {
  return std::make_unique<PeriodicColoring>(std::move(matrix), offset);
}

FiniteSample::FiniteSample(std::vector<std::vector<int>> table) : table_(std::move(table)) {
  for (const auto& row : table_) {
    if (row.size() != table_.size()) throw Error(ErrorKind::kInvalidArgument, "sample table must be square");
  }
}

int FiniteSample::color(std::uint64_t m, std::uint64_t k) const { return table_.at(m).at(k); }

bool FiniteSample::infinitely_many(std::span<const Constraint> cs, std::uint64_t lower) const {
  // Finite analogue: the requested colour keeps at least as many admissible
  // points as the opposite colour on the last constraint.
  auto count = [&](bool flip_last) {
    std::size_t n = 0;
    for (std::uint64_t k = lower + 1; k < table_.size(); ++k) {
      bool ok = true;
      for (std::size_t j = 0; j < cs.size() && ok; ++j) {
        const int want = (flip_last && j + 1 == cs.size()) ? 1 - cs[j].color : cs[j].color;
        ok = cs[j].m < k && table_[cs[j].m][k] == want;
      }
      n += ok;
    }
    return n;
  };
  const std::size_t kept = count(false);
  return kept > 0 && (cs.empty() || kept >= count(true));
}

std::unique_ptr<Coloring> parse_coloring(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "constant") return constant_coloring(static_cast<int>(parse_number(arg, spec)));
  if (kind == "minparity") return min_parity_coloring();
  if (kind == "threshold") return threshold_coloring(parse_number(arg, spec));
  if (kind == "periodic") {
    std::string body = arg;
    std::uint64_t offset = 0;
    if (auto at = body.find('@'); at != std::string::npos) {
      offset = parse_number(body.substr(at + 1), spec);
      body = body.substr(0, at);
    }
    std::vector<std::vector<int>> matrix(1);
    for (char c : body) {
      if (c == '/') {
        matrix.emplace_back();
      } else if (c == '0' || c == '1') {
        matrix.back().push_back(c - '0');
      } else {
        throw Error(ErrorKind::kInvalidArgument, "bad periodic matrix in '" + spec + "'");
      }
    }
    return eventually_periodic_coloring(std::move(matrix), offset);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown coloring '" + spec + "'");
}

HomogeneousResult homogeneous_prefix(const Coloring& r, std::size_t count, bool trace, std::size_t window) {
  if (count == 0) throw Error(ErrorKind::kInvalidArgument, "count must be at least 1");
  HomogeneousResult out;
  const auto size = r.sample_size();
  std::vector<Constraint> constraints;  // (m, c_m) for every m computed so far

  auto ensure_color = [&](std::uint64_t n) {
    while (constraints.size() <= n) {
      const std::uint64_t next = constraints.size();
      constraints.push_back(Constraint{next, 0});
      if (!r.infinitely_many(constraints, next)) constraints.back().color = 1;
      if (trace) out.trace.push_back("rho[" + std::to_string(next) + "]=" + std::to_string(constraints.back().color));
    }
  };

  std::vector<std::uint64_t> selected;
  auto select_next = [&]() -> bool {
    if (selected.empty()) {
      if (size && *size == 0) return false;
      selected.push_back(0);
    } else {
      const std::uint64_t prev = selected.back();
      ensure_color(prev);
      const std::uint64_t limit = size ? *size : prev + 1 + kMaxGap;
      std::uint64_t found = limit;
      for (std::uint64_t k = prev + 1; k < limit && found == limit; ++k) {
        bool ok = true;
        for (std::uint64_t m = 0; m <= prev && ok; ++m) ok = r.color(m, k) == constraints[m].color;
        if (ok) found = k;
      }
      if (found == limit) {
        if (size) return false;
        throw UnsupportedQuery("no admissible element within " + std::to_string(kMaxGap) + " of " +
                               std::to_string(prev));
      }
      selected.push_back(found);
    }
    if (trace) {
      out.trace.push_back("n[" + std::to_string(selected.size() - 1) + "]=" + std::to_string(selected.back()));
    }
    ensure_color(selected.back());
    return true;
  };

  auto color_of = [&](std::size_t i) { return constraints[selected[i]].color; };

  if (size) {
    while (select_next()) {
    }
    std::size_t ones = 0;
    for (std::size_t i = 0; i < selected.size(); ++i) ones += color_of(i) == 1;
    out.color = ones > selected.size() - ones ? 1 : 0;
  } else {
    const std::size_t w = std::max<std::size_t>(window, 4 * count + 64);
    while (selected.size() < w) select_next();
    out.color = 1;
    for (std::size_t i = w / 2; i < w; ++i) {
      if (color_of(i) == 0) out.color = 0;
    }
  }

  for (std::size_t i = 0; out.elements.size() < count; ++i) {
    while (i >= selected.size()) {
      if (size || !select_next()) {
        out.complete = false;
        break;
      }
    }
    if (!out.complete) break;
    if (color_of(i) == out.color) out.elements.push_back(selected[i]);
  }
  if (trace) out.trace.push_back("istar=" + std::to_string(out.color));
  return out;
}

}  // namespace medforge::ramsey
