#include "medforge/branch.hpp"

#include <algorithm>

#include "stream_node.hpp"

namespace medforge {

std::string prefix_code(const BigInt& n) {
  const BigInt m = n + 1;
  const std::size_t len = boost::multiprecision::msb(m) + 1;
  std::string out(len - 1, '0');
  out.reserve(2 * len - 1);
  for (std::size_t k = len; k-- > 0;) out.push_back(boost::multiprecision::bit_test(m, k) ? '1' : '0');
  return out;
}

std::string branch_bits(const StreamFun& f, std::size_t t, QueryCounter* counter) {
  auto& cache = f.node().cache;
  std::string out;
  std::uint64_t next = 0;
  if (!counter) {
    std::lock_guard<std::mutex> lock(cache.mu);
    out = cache.eta_bits;
    next = cache.eta_next_node;
  }
  if (out.size() >= t) return out.substr(0, t);

  std::string complete = out;  // bits from fully emitted nodes
  std::uint64_t complete_next = next;
  while (out.size() < t) {
    const std::size_t need = t - out.size();
    const HfSet v = stream_eval(f, node_at_index(next));
    if (counter) {
      ++counter->evaluations;
      counter->max_index = std::max(counter->max_index, next);
    }
    auto code = ack_code_below(v, need);
    if (!code) {
      // code ≥ 2^need, so its prefix code starts with at least `need` zeros.
      out.append(need, '0');
      break;
    }
    const std::string pc = prefix_code(*code);
    if (pc.size() > need) {
      out += pc.substr(0, need);
      break;
    }
    out += pc;
    ++next;
    complete = out;
    complete_next = next;
  }
  if (!counter) {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (complete_next > cache.eta_next_node) {
      cache.eta_bits = std::move(complete);
      cache.eta_next_node = complete_next;
    }
  }
  return out;
}

BinStr branch_node(const StreamFun& f, std::size_t n) { return BinStr(branch_bits(f, n)); }

std::optional<std::size_t> branch_split(const StreamFun& a, const StreamFun& b, std::size_t limit) {
  if (a.identity() == b.identity()) return std::nullopt;
  std::size_t t = std::min<std::size_t>(64, limit);
  while (true) {
    const std::string x = branch_bits(a, t);
    const std::string y = branch_bits(b, t);
    for (std::size_t k = 0; k < t; ++k) {
      if (x[k] != y[k]) return k;
    }
    if (t >= limit) return std::nullopt;
    t = std::min(limit, t * 4);
  }
}

}  // namespace medforge
