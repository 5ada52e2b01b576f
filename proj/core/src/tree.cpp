#include "medforge/tree.hpp"

#include <mutex>
#include <unordered_map>

#include "medforge/error.hpp"

namespace medforge {

BinStr::BinStr(std::string_view bits) : bits_(bits) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::kInvalidArgument,
                  "binary string may only contain 0 and 1: \"" + bits_ + "\"");
    }
  }
}

BinStr node_meet(const BinStr& a, const BinStr& b) {
  std::size_t n = 0;
  const std::size_t lim = std::min(a.size(), b.size());
  while (n < lim && a.bit(n) == b.bit(n)) ++n;
  return a.prefix(n);
}

BinStr node_at_index(std::uint64_t i) {
  std::size_t len = 0;
  while ((std::uint64_t{2} << len) - 1 <= i) ++len;
  std::uint64_t v = i + 1 - (std::uint64_t{1} << len);
  std::string bits(len, '0');
  for (std::size_t k = 0; k < len; ++k) {
    if ((v >> (len - 1 - k)) & 1) bits[k] = '1';
  }
  return BinStr(bits);
}

std::uint64_t index_of_node(const BinStr& s) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < s.size(); ++k) v = (v << 1) | static_cast<std::uint64_t>(s.bit(k));
  return (std::uint64_t{1} << s.size()) - 1 + v;
}

std::vector<BinStr> nodes_of_depth_below(std::size_t depth) {
  std::vector<BinStr> out;
  out.reserve(nodes_below(depth));
  for (std::uint64_t i = 0; i < nodes_below(depth); ++i) out.push_back(node_at_index(i));
  return out;
}

std::vector<BinStr> nodes_of_length(std::size_t n) {
  std::vector<BinStr> out;
  const std::uint64_t first = nodes_below(n);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) out.push_back(node_at_index(first + i));
  return out;
}

HfSet encode_string(const BinStr& s) {
  static std::mutex mu;
  static std::unordered_map<std::string, HfSet> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(s.str()); it != cache.end()) return it->second;
  }
  std::vector<HfSet> pairs;
  pairs.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    pairs.push_back(kpair(von_neumann(i), von_neumann(static_cast<std::size_t>(s.bit(i)))));
  }
  HfSet v = HfSet::make(pairs);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(s.str(), v);
  return v;
}

std::optional<BinStr> try_decode_string(const HfSet& v) {
  const std::size_t n = v.size();
  std::string bits(n, '?');
  for (const auto& p : v.members()) {
    auto kv = try_kunpair(p);
    if (!kv) return std::nullopt;
    auto i = as_von_neumann(kv->first);
    auto b = as_von_neumann(kv->second);
    if (!i || !b || *i >= n || *b > 1 || bits[*i] != '?') return std::nullopt;
    bits[*i] = *b ? '1' : '0';
  }
  return BinStr(bits);
}

BinStr decode_string(const HfSet& v) {
  auto s = try_decode_string(v);
  if (!s) throw Error(ErrorKind::kMalformed, "not a string code");
  return *s;
}

LevelFun::LevelFun(std::size_t depth, std::vector<HfSet> values)
    : depth_(depth), values_(std::move(values)) {
  if (values_.size() != nodes_below(depth_)) {
    throw Error(ErrorKind::kInvalidArgument, "level function needs 2^depth - 1 values");
  }
}

LevelFun LevelFun::constant(std::size_t depth, const HfSet& v) {
  return LevelFun(depth, std::vector<HfSet>(nodes_below(depth), v));
}

const HfSet& LevelFun::at(const BinStr& node) const {
  if (node.size() >= depth_) throw Error(ErrorKind::kInvalidArgument, "node outside level function domain");
  return values_[index_of_node(node)];
}

LevelFun LevelFun::restrict(std::size_t m) const {
  if (m > depth_) throw Error(ErrorKind::kInvalidArgument, "restriction deeper than level function");
  return LevelFun(m, std::vector<HfSet>(values_.begin(), values_.begin() + nodes_below(m)));
}

bool LevelFun::restricts(const LevelFun& other) const {
  if (depth_ > other.depth_) return false;
  return std::equal(values_.begin(), values_.end(), other.values_.begin());
}

HfSet encode_levelfun(const LevelFun& l) {
  std::vector<HfSet> pairs;
  pairs.reserve(l.values().size());
  for (std::uint64_t i = 0; i < l.values().size(); ++i) {
    pairs.push_back(kpair(encode_string(node_at_index(i)), l.at_index(i)));
  }
  return HfSet::make(pairs);
}

std::optional<LevelFun> decode_levelfun(const HfSet& v, std::size_t n) {
  if (n >= 63 || v.size() != nodes_below(n)) return std::nullopt;
  std::vector<HfSet> values(v.size());
  std::vector<bool> seen(v.size(), false);
  for (const auto& p : v.members()) {
    auto kv = try_kunpair(p);
    if (!kv) return std::nullopt;
    auto key = try_decode_string(kv->first);
    if (!key || key->size() >= n) return std::nullopt;
    const auto idx = index_of_node(*key);
    if (seen[idx]) return std::nullopt;
    seen[idx] = true;
    values[idx] = kv->second;
  }
  return LevelFun(n, std::move(values));
}

std::optional<std::size_t> levelfun_depth(const HfSet& v) {
  // |v| = 2^n − 1 pins n down.
  const std::uint64_t sz = v.size();
  std::size_t n = 0;
  while (nodes_below(n) < sz) ++n;
  if (nodes_below(n) != sz) return std::nullopt;
  if (is_levelfun_of_depth(v, n)) return n;
  return std::nullopt;
}

bool is_levelfun_of_depth(const HfSet& v, std::size_t n) {
  if (n >= 63 || v.size() != nodes_below(n)) return false;
  struct Key {
    const void* id;
    std::size_t n;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>{}(k.id) * 31 + k.n;
    }
  };
  static std::mutex mu;
  static std::unordered_map<Key, bool, KeyHash> memo;
  const Key key{v.identity(), n};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const bool r = decode_levelfun(v, n).has_value();
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, r);
  return r;
}

}  // namespace medforge
