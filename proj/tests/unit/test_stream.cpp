#include <doctest.h>

#include "medforge/error.hpp"
#include "medforge/stream.hpp"
#include "medforge/text.hpp"
#include "oracle.hpp"

using namespace medforge;

namespace {
const HfSet e;
const HfSet one = HfSet::make({e});
const StreamFun zero = StreamFun::table(e);
}  // namespace

TEST_CASE("table and level-constant evaluation") {
  for (std::uint64_t i = 0; i < 31; ++i) CHECK(stream_eval(zero, node_at_index(i)) == e);
  const StreamFun t = StreamFun::table(e, {{BinStr("1"), one}});
  CHECK(stream_eval(t, BinStr("1")) == one);
  CHECK(stream_eval(t, BinStr("0")) == e);
  const StreamFun lc = StreamFun::levelconst({e, one});
  CHECK(stream_eval(lc, BinStr("")) == e);
  CHECK(stream_eval(lc, BinStr("0")) == one);
  CHECK(stream_eval(lc, BinStr("11")) == e);
}

TEST_CASE("restriction of a stream") {
  const StreamFun t = StreamFun::table(e, {{BinStr("1"), one}});
  CHECK(restrict(t, 0) == LevelFun(0, {}));
  CHECK(restrict(t, 2) == LevelFun(2, {e, e, one}));
  for (std::size_t m = 0; m <= 4; ++m) CHECK(restrict(t, 4).restrict(m) == restrict(t, m));
}

TEST_CASE("F1 is level constant with truncation values") {
  const StreamFun f = StreamFun::table(e, {{BinStr("0"), one}});
  const StreamFun g = f1_of(f);
  CHECK(stream_eval(g, BinStr("")) == e);
  CHECK(oracle::code(stream_eval(f1_of(zero), BinStr("0"))) == 4);
  for (std::size_t n = 0; n < 6; ++n) {
    const HfSet level = stream_eval(g, nodes_of_length(n).front());
    CHECK(level == encode_levelfun(restrict(f, n)));
    CHECK(level == truncation_code(f, n));
    for (const auto& v : nodes_of_length(n)) CHECK(stream_eval(g, v) == level);
  }
  // Sources differing at depth 1 give F1 values differing from length 2 on.
  const StreamFun h = StreamFun::table(e, {{BinStr("1"), one}});
  CHECK(stream_eval(f1_of(h), BinStr("0")) == stream_eval(g, BinStr("0")));
  for (std::size_t n = 2; n < 6; ++n) {
    CHECK_FALSE(stream_eval(f1_of(h), nodes_of_length(n).back()) == stream_eval(g, nodes_of_length(n).back()));
  }
}

TEST_CASE("node sets") {
  const NodeSet fin = NodeSet::finite({BinStr("110"), BinStr("0")});
  CHECK(fin.contains(BinStr("110")));
  CHECK_FALSE(fin.contains(BinStr("11")));
  CHECK(fin.members_below(3) == std::vector<BinStr>{BinStr("0")});
  // η for the all-∅ table is 111...; branch-off nodes are 1^m 0.
  const NodeSet bo = NodeSet::branch_off(zero, 1, 2, 0);
  CHECK(bo.contains(BinStr("10")));
  CHECK_FALSE(bo.contains(BinStr("110")));
  CHECK(bo.contains(BinStr("1110")));
  CHECK_FALSE(bo.contains(BinStr("0")));
  const NodeSet tail = NodeSet::branch_off(zero, 0, 1, 2);
  CHECK(tail.contains(BinStr("000")));
  CHECK(tail.contains(BinStr("1000")));
  CHECK_FALSE(tail.contains(BinStr("10")));
  for (const auto& v : tail.members_below(7)) CHECK(tail.contains(v));
}

TEST_CASE("patch streams") {
  const StreamFun p = StreamFun::patch(zero, NodeSet::finite({BinStr("01")}), StreamFun::table(one));
  CHECK(stream_eval(p, BinStr("01")) == one);
  CHECK(stream_eval(p, BinStr("00")) == e);
  // An empty patch is the base stream everywhere.
  const StreamFun q = StreamFun::patch(f1_of(zero), NodeSet::finite({}), zero);
  for (std::uint64_t i = 0; i < 63; ++i) {
    CHECK(stream_eval(q, node_at_index(i)) == stream_eval(f1_of(zero), node_at_index(i)));
  }
}

TEST_CASE("eq and dif partition the horizon") {
  const EqDif same = eq_dif_nodes(zero, zero, 4);
  CHECK(same.eq.size() == 15);
  CHECK(same.dif.empty());
  const EqDif ed = eq_dif_nodes(zero, f1_of(zero), 3);
  CHECK(ed.eq == std::vector<BinStr>{BinStr("")});
  CHECK(ed.dif.size() == 6);
}

TEST_CASE("stream text round trips") {
  const char* texts[] = {
      "table(default={})",
      "table(default={}; \"\"={{}}, \"01\"={{},{{}}})",
      "levelconst(period=2; {},{{}})",
      "f1(table(default={{}}))",
      "patch(f1(table(default={})); w=branchoff(table(default={}),3,1,0); table(default={}))",
      "patch(table(default={}); w=finite(\"0\",\"110\"); f1(levelconst(period=1; {})))",
  };
  for (const char* t : texts) {
    CHECK(to_text(parse_stream(t)) == t);
    CHECK(canonicalize(t) == t);
  }
  CHECK(canonicalize("table( default = #1 ;\"1\"=#3)") == "table(default={{}}; \"1\"={{},{{}}})");
  CHECK(canonicalize("{}") == "{}");
  CHECK(canonicalize("#3") == "{{},{{}}}");
  CHECK(canonicalize("finite(\"1\",\"0\")") == "finite(\"0\",\"1\")");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_stream("table(default={}; \"2\"={})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_stream("levelconst(period=2; {})"), ParseError);
  CHECK_THROWS_AS(parse_stream("table(default={}) extra"), ParseError);
  CHECK_THROWS_AS(parse_nodeset("branchoff(table(default={}),0,0,0)"), ParseError);
  const auto lines = parse_stream_lines("// family\ntable(default={})\n\nf1(table(default={}))\n");
  CHECK(lines.size() == 2);
  const auto region = parse_region("\"\"={}\n\"0\"=#4\n");
  CHECK(region.size() == 2);
  CHECK(region_to_text(region) == "\"\"={}\n\"0\"={{{{}}}}\n");
}
