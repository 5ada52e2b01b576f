#include "medforge/stream.hpp"

#include <algorithm>

#include "medforge/branch.hpp"
#include "medforge/error.hpp"
#include "stream_node.hpp"

namespace medforge {

using detail::BranchOffData;
using detail::F1Data;
using detail::FiniteData;
using detail::LevelConstData;
using detail::NodeSetNode;
using detail::PatchData;
using detail::StreamNode;
using detail::TableData;

namespace {

template <typename T>
const T& expect(const StreamNode& n, const char* what) {
  if (auto p = std::get_if<T>(&n.data)) return *p;
  throw Error(ErrorKind::kInvalidArgument, std::string("stream is not a ") + what);
}

template <typename T>
const T& expect(const NodeSetNode& n, const char* what) {
  if (auto p = std::get_if<T>(&n.data)) return *p;
  throw Error(ErrorKind::kInvalidArgument, std::string("node set is not ") + what);
}

}  // namespace

StreamFun StreamFun::table(HfSet default_value, std::map<BinStr, HfSet> exceptions) {
  auto n = std::make_shared<StreamNode>();
  std::size_t longest = 0;
  for (const auto& [k, v] : exceptions) longest = std::max(longest, k.size() + 1);
  n->data = TableData{std::move(default_value), std::move(exceptions), longest};
  return StreamFun(std::move(n));
}

StreamFun StreamFun::levelconst(std::vector<HfSet> schedule) {
  if (schedule.empty()) throw Error(ErrorKind::kInvalidArgument, "levelconst needs period >= 1");
  auto n = std::make_shared<StreamNode>();
  n->data = LevelConstData{std::move(schedule)};
  return StreamFun(std::move(n));
}

StreamFun StreamFun::f1_of(const StreamFun& p) {
  auto n = std::make_shared<StreamNode>();
  n->data = F1Data{p};
  return StreamFun(std::move(n));
}

StreamFun StreamFun::patch(const StreamFun& base, const NodeSet& w, const StreamFun& override_with) {
  auto n = std::make_shared<StreamNode>();
  n->data = PatchData{base, w, override_with};
  return StreamFun(std::move(n));
}

StreamKind StreamFun::kind() const { return static_cast<StreamKind>(node_->data.index()); }

const HfSet& StreamFun::table_default() const { return expect<TableData>(*node_, "table").default_value; }
const std::map<BinStr, HfSet>& StreamFun::table_exceptions() const {
  return expect<TableData>(*node_, "table").exceptions;
}
const std::vector<HfSet>& StreamFun::schedule() const {
  return expect<LevelConstData>(*node_, "levelconst").schedule;
}
const StreamFun& StreamFun::f1_source() const { return expect<F1Data>(*node_, "f1").source; }
const StreamFun& StreamFun::patch_base() const { return expect<PatchData>(*node_, "patch").base; }
const NodeSet& StreamFun::patch_set() const { return expect<PatchData>(*node_, "patch").w; }
const StreamFun& StreamFun::patch_override() const {
  return expect<PatchData>(*node_, "patch").override_with;
}

NodeSet NodeSet::finite(std::vector<BinStr> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto n = std::make_shared<NodeSetNode>();
  n->data = FiniteData{std::move(nodes)};
  return NodeSet(std::move(n));
}

NodeSet NodeSet::branch_off(const StreamFun& source, std::size_t start, std::size_t step,
                            std::size_t tail) {
  if (step == 0) throw Error(ErrorKind::kInvalidArgument, "branchoff step must be >= 1");
  auto n = std::make_shared<NodeSetNode>();
  n->data = BranchOffData{source, start, step, tail};
  return NodeSet(std::move(n));
}

NodeSetKind NodeSet::kind() const { return static_cast<NodeSetKind>(node_->data.index()); }
const std::vector<BinStr>& NodeSet::finite_nodes() const {
  return expect<FiniteData>(*node_, "finite").nodes;
}
const StreamFun& NodeSet::source() const { return expect<BranchOffData>(*node_, "branchoff").source; }
std::size_t NodeSet::start() const { return expect<BranchOffData>(*node_, "branchoff").start; }
std::size_t NodeSet::step() const { return expect<BranchOffData>(*node_, "branchoff").step; }
std::size_t NodeSet::tail() const { return expect<BranchOffData>(*node_, "branchoff").tail; }

bool NodeSet::contains(const BinStr& node) const {
  if (auto f = std::get_if<FiniteData>(&node_->data)) {
    return std::binary_search(f->nodes.begin(), f->nodes.end(), node);
  }
  const auto& b = std::get<BranchOffData>(node_->data);
  const std::size_t len = node.size();
  if (len < b.tail + 1) return false;
  const std::size_t m = len - 1 - b.tail;
  if (m < b.start || (m - b.start) % b.step != 0) return false;
  for (std::size_t k = m + 1; k < len; ++k) {
    if (node.bit(k) != 0) return false;
  }
  const BinStr eta = branch_node(b.source, m + 1);
  for (std::size_t k = 0; k < m; ++k) {
    if (node.bit(k) != eta.bit(k)) return false;
  }
  return node.bit(m) != eta.bit(m);
}

std::vector<BinStr> NodeSet::members_below(std::size_t depth) const {
  std::vector<BinStr> out;
  if (auto f = std::get_if<FiniteData>(&node_->data)) {
    for (const auto& s : f->nodes) {
      if (s.size() < depth) out.push_back(s);
    }
    return out;
  }
  const auto& b = std::get<BranchOffData>(node_->data);
  if (depth < b.tail + 2) return out;
  const BinStr eta = branch_node(b.source, depth);
  for (std::size_t m = b.start; m + 1 + b.tail < depth; m += b.step) {
    BinStr nu = eta.prefix(m).child(1 - eta.bit(m));
    for (std::size_t k = 0; k < b.tail; ++k) nu = nu.child(0);
    out.push_back(nu);
  }
  return out;
}

HfSet truncation_code(const StreamFun& f, std::size_t n) {
  auto& cache = f.node().cache;
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (auto it = cache.truncation_codes.find(n); it != cache.truncation_codes.end()) return it->second;
  }
  HfSet v = encode_levelfun(restrict(f, n));
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.truncation_codes.emplace(n, v);
  return v;
}

HfSet stream_eval(const StreamFun& f, const BinStr& node) {
  const StreamNode& n = f.node();
  switch (f.kind()) {
    case StreamKind::kTable: {
      const auto& t = std::get<TableData>(n.data);
      if (auto it = t.exceptions.find(node); it != t.exceptions.end()) return it->second;
      return t.default_value;
    }
    case StreamKind::kLevelConst: {
      const auto& s = std::get<LevelConstData>(n.data).schedule;
      return s[node.size() % s.size()];
    }
    case StreamKind::kF1Of:
      return truncation_code(std::get<F1Data>(n.data).source, node.size());
    case StreamKind::kPatch: {
      const auto& p = std::get<PatchData>(n.data);
      return p.w.contains(node) ? stream_eval(p.override_with, node) : stream_eval(p.base, node);
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown stream kind");
}

LevelFun restrict(const StreamFun& f, std::size_t n) {
  std::vector<HfSet> values;
  values.reserve(nodes_below(n));
  if (f.kind() == StreamKind::kF1Of) {
    // Level-uniform: one truncation per length.
    for (std::size_t len = 0; len < n; ++len) {
      HfSet v = truncation_code(f.f1_source(), len);
      values.insert(values.end(), std::size_t{1} << len, v);
    }
    return LevelFun(n, std::move(values));
  }
  for (std::uint64_t i = 0; i < nodes_below(n); ++i) values.push_back(stream_eval(f, node_at_index(i)));
  return LevelFun(n, std::move(values));
}

EqDif eq_dif_nodes(const StreamFun& f, const StreamFun& g, std::size_t horizon) {
  EqDif out;
  for (std::uint64_t i = 0; i < nodes_below(horizon); ++i) {
    BinStr s = node_at_index(i);
    if (stream_eval(f, s) == stream_eval(g, s)) {
      out.eq.push_back(std::move(s));
    } else {
      out.dif.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace medforge
