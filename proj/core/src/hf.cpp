#include "medforge/hf.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <unordered_set>

#include "medforge/error.hpp"

namespace medforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudget: return "BUDGET";
    case ErrorKind::kMalformed: return "MALFORMED";
    case ErrorKind::kParse: return "PARSE";
    case ErrorKind::kUnsupported: return "UNSUPPORTED_PRESENTATION";
    case ErrorKind::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

namespace detail {

struct HfNode {
  std::vector<HfSet> members;  // canonical order, ascending
  std::size_t hash = 0;
  std::uint32_t rank = 0;
  // Ackermann code when it fits in 64 bits.
  std::optional<std::uint64_t> small_code;
};

}  // namespace detail

namespace {

using detail::HfNode;

struct NodeHash {
  std::size_t operator()(const HfNode* n) const { return n->hash; }
};
struct NodeEq {
  bool operator()(const HfNode* a, const HfNode* b) const {
    return a->members == b->members;
  }
};

class InternTable {
 public:
  static InternTable& instance() {
    static InternTable table;
    return table;
  }

  const HfNode* intern(std::vector<HfSet> members) {
    HfNode probe;
    probe.members = std::move(members);
    probe.hash = hash_members(probe.members);
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = table_.find(&probe); it != table_.end()) return *it;
    HfNode& stored = arena_.emplace_back(std::move(probe));
    finish(stored);
    table_.insert(&stored);
    return &stored;
  }

  const HfNode* empty() {
    static const HfNode* e = intern({});
    return e;
  }

 private:
  static std::size_t hash_members(const std::vector<HfSet>& ms) {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& m : ms) {
      auto p = reinterpret_cast<std::uintptr_t>(m.identity());
      h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  static void finish(HfNode& n) {
    std::uint32_t rank = 0;
    std::uint64_t code = 0;
    bool small = true;
    for (const auto& m : n.members) {
      rank = std::max(rank, m.rank() + 1);
    }
    // Small codes are only derivable when every member code is < 64.
    for (const auto& m : n.members) {
      auto c = m.small_code();
      if (!c || *c >= 64) {
        small = false;
        break;
      }
      code |= std::uint64_t{1} << *c;
    }
    n.rank = rank;
    if (small) n.small_code = code;
  }

  std::mutex mu_;
  std::deque<HfNode> arena_;
  std::unordered_set<const HfNode*, NodeHash, NodeEq> table_;
};

std::atomic<std::size_t> g_budget_override{0};

std::size_t env_budget() {
  static const std::size_t value = [] {
    if (const char* env = std::getenv("MEDFORGE_BIGINT_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{65536};
  }();
  return value;
}

}  // namespace

HfSet::HfSet() : node_(InternTable::instance().empty()) {}

HfSet HfSet::make(std::span<const HfSet> items) {
  std::vector<HfSet> ms(items.begin(), items.end());
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return HfSet(InternTable::instance().intern(std::move(ms)));
}

HfSet hf_make(std::span<const HfSet> items) { return HfSet::make(items); }

std::span<const HfSet> HfSet::members() const { return node_->members; }
std::uint32_t HfSet::rank() const { return node_->rank; }
std::size_t HfSet::hash() const { return node_->hash; }
std::optional<std::uint64_t> HfSet::small_code() const { return node_->small_code; }

bool HfSet::contains(const HfSet& x) const {
  const auto& ms = node_->members;
  return std::binary_search(ms.begin(), ms.end(), x);
}

bool HfSet::subset_of(const HfSet& other) const {
  if (node_ == other.node_) return true;
  if (size() > other.size()) return false;
  const auto& a = node_->members;
  const auto& b = other.node_->members;
  std::size_t j = 0;
  for (const auto& x : a) {
    while (j < b.size() && b[j] < x) ++j;
    if (j == b.size() || !(b[j] == x)) return false;
    ++j;
  }
  return true;
}

std::strong_ordering HfSet::operator<=>(const HfSet& o) const {
  if (node_ == o.node_) return std::strong_ordering::equal;
  if (node_->small_code && o.node_->small_code) {
    return *node_->small_code <=> *o.node_->small_code;
  }
  if (node_->rank != o.node_->rank) return node_->rank <=> o.node_->rank;
  // Binary comparison: the largest member present in only one set decides.
  const auto& a = node_->members;
  const auto& b = o.node_->members;
  std::size_t i = a.size();
  std::size_t j = b.size();
  while (i > 0 && j > 0) {
    --i;
    --j;
    auto c = a[i] <=> b[j];
    if (c != std::strong_ordering::equal) return c;
  }
  if (i > 0) return std::strong_ordering::greater;
  if (j > 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::size_t bigint_budget_bits() {
  std::size_t o = g_budget_override.load();
  return o ? o : env_budget();
}

void set_bigint_budget_bits(std::size_t bits) { g_budget_override = bits; }

std::optional<BigInt> ack_code_below(const HfSet& x, std::size_t bits) {
  if (auto s = x.small_code()) {
    if (bits >= 64 || *s < (std::uint64_t{1} << bits)) return BigInt(*s);
    return std::nullopt;
  }
  if (bits <= 64) return std::nullopt;
  // code(x) < 2^bits  iff  code(max member) < bits.
  const auto ms = x.members();
  auto top = ms.back().small_code();
  if (!top || *top >= bits) return std::nullopt;
  BigInt code = 0;
  for (const auto& m : ms) boost::multiprecision::bit_set(code, *m.small_code());
  return code;
}

BigInt ack_code(const HfSet& x) {
  auto c = ack_code_below(x, bigint_budget_bits());
  if (!c) {
    throw Error(ErrorKind::kBudget,
                "Ackermann code exceeds MEDFORGE_BIGINT_BUDGET of " +
                    std::to_string(bigint_budget_bits()) + " bits");
  }
  return *c;
}

HfSet ack_decode(const BigInt& n) {
  if (n < 0) throw Error(ErrorKind::kInvalidArgument, "negative code");
  std::vector<HfSet> ms;
  if (n == 0) return HfSet();
  const auto top = boost::multiprecision::msb(n);
  for (std::size_t i = 0; i <= top; ++i) {
    if (boost::multiprecision::bit_test(n, i)) ms.push_back(ack_decode(BigInt(i)));
  }
  return HfSet::make(ms);
}

HfSet von_neumann(std::size_t n) {
  static std::mutex mu;
  static std::vector<HfSet> cache{HfSet()};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    std::vector<HfSet> ms(cache.begin(), cache.end());
    cache.push_back(HfSet::make(ms));
  }
  return cache[n];
}

std::optional<std::size_t> as_von_neumann(const HfSet& x) {
  const std::size_t n = x.size();
  if (x == von_neumann(n)) return n;
  return std::nullopt;
}

HfSet kpair(const HfSet& a, const HfSet& b) {
  return HfSet::make({HfSet::make({a}), HfSet::make({a, b})});
}

std::optional<std::pair<HfSet, HfSet>> try_kunpair(const HfSet& p) {
  const auto ms = p.members();
  if (ms.size() == 1) {
    // {{a}} = kpair(a, a)
    const auto inner = ms[0].members();
    if (inner.size() != 1) return std::nullopt;
    return std::pair{inner[0], inner[0]};
  }
  if (ms.size() != 2) return std::nullopt;
  // Canonical order puts {a} before {a,b} whenever the pair is well formed,
  // but check both layouts rather than rely on it.
  for (int s = 0; s < 2; ++s) {
    const HfSet& single = ms[s];
    const HfSet& dbl = ms[1 - s];
    if (single.size() != 1 || dbl.size() != 2) continue;
    const HfSet& a = single.members()[0];
    if (!dbl.contains(a)) continue;
    const HfSet& b = dbl.members()[0] == a ? dbl.members()[1] : dbl.members()[0];
    return std::pair{a, b};
  }
  return std::nullopt;
}

std::pair<HfSet, HfSet> kunpair(const HfSet& p) {
  auto r = try_kunpair(p);
  if (!r) throw Error(ErrorKind::kMalformed, "not a pair");
  return *r;
}

namespace {

void append_literal(const HfSet& x, std::string& out) {
  out.push_back('{');
  bool first = true;
  for (const auto& m : x.members()) {
    if (!first) out.push_back(',');
    first = false;
    append_literal(m, out);
  }
  out.push_back('}');
}

class HfParser {
 public:
  explicit HfParser(std::string_view s) : s_(s) {}

  HfSet parse_all() {
    HfSet v = parse_value();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

  HfSet parse_value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected HF literal");
    if (s_[pos_] == '#') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected digits after '#'");
      return ack_decode(BigInt(std::string(s_.substr(start, pos_ - start))));
    }
    if (s_[pos_] != '{') fail("expected '{' or '#'");
    ++pos_;
    std::vector<HfSet> items;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '}') {
      ++pos_;
      return HfSet();
    }
    while (true) {
      items.push_back(parse_value());
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated set");
      if (s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (s_[pos_] == '}') {
        ++pos_;
        break;
      }
      fail("expected ',' or '}'");
    }
    return HfSet::make(items);
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, static_cast<int>(pos_) + 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_literal(const HfSet& x) {
  std::string out;
  append_literal(x, out);
  return out;
}

HfSet parse_hf(std::string_view text) { return HfParser(text).parse_all(); }

}  // namespace medforge
