#include <doctest.h>

#include <random>

#include "medforge/error.hpp"
#include "medforge/tree.hpp"
#include "oracle.hpp"

using namespace medforge;

TEST_CASE("binary strings") {
  CHECK_THROWS_AS(BinStr("012"), Error);
  const BinStr s("0110");
  CHECK(s.size() == 4);
  CHECK(s.bit(1) == 1);
  CHECK(s.prefix(2) == BinStr("01"));
  CHECK(BinStr("01").is_prefix_of(s));
  CHECK_FALSE(BinStr("1").is_prefix_of(s));
  CHECK(BinStr("1") < BinStr("00"));
  CHECK(BinStr("00") < BinStr("01"));
}

TEST_CASE("meet") {
  CHECK(node_meet(BinStr("0110"), BinStr("010")) == BinStr("01"));
  CHECK(node_meet(BinStr(""), BinStr("0110")) == BinStr(""));
  CHECK(node_meet(BinStr("0110"), BinStr("0110")) == BinStr("0110"));
}

TEST_CASE("length-lex indexing") {
  CHECK(node_at_index(0) == BinStr(""));
  CHECK(node_at_index(1) == BinStr("0"));
  CHECK(node_at_index(2) == BinStr("1"));
  CHECK(node_at_index(3) == BinStr("00"));
  CHECK(node_at_index(4) == BinStr("01"));
  for (std::uint64_t i = 0; i < 1024; ++i) {
    CHECK(index_of_node(node_at_index(i)) == i);
    if (i > 0) CHECK(node_at_index(i - 1) < node_at_index(i));
  }
  CHECK(nodes_of_length(3).size() == 8);
  CHECK(nodes_of_length(3).front() == BinStr("000"));
  CHECK(nodes_of_depth_below(3).size() == 7);
}

TEST_CASE("string codes") {
  CHECK(encode_string(BinStr("")) == HfSet());
  CHECK(oracle::code(encode_string(BinStr("1"))) == 1024);
  CHECK(encode_string(BinStr("1")) == HfSet::make({kpair(von_neumann(0), von_neumann(1))}));
  for (std::size_t len = 0; len <= 6; ++len) {
    for (const auto& s : nodes_of_length(len)) CHECK(decode_string(encode_string(s)) == s);
  }
  CHECK_FALSE(try_decode_string(von_neumann(2)).has_value());
  CHECK_THROWS_AS(decode_string(von_neumann(2)), Error);
}

TEST_CASE("level function encoding") {
  CHECK(encode_levelfun(LevelFun(0, {})) == HfSet());
  const HfSet depth1 = encode_levelfun(LevelFun::constant(1, HfSet()));
  CHECK(depth1 == HfSet::make({HfSet::make({HfSet::make({HfSet()})})}));
  CHECK(oracle::code(depth1) == 4);

  CHECK(is_levelfun_of_depth(HfSet(), 0));
  CHECK_FALSE(is_levelfun_of_depth(HfSet(), 1));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t depth = rng() % 4;
    std::vector<HfSet> values;
    for (std::uint64_t i = 0; i < nodes_below(depth); ++i) values.push_back(ack_decode(rng() % 8));
    const LevelFun l(depth, values);
    const HfSet code = encode_levelfun(l);
    CHECK(decode_levelfun(code, depth) == l);
    CHECK(is_levelfun_of_depth(code, depth));
    CHECK_FALSE(is_levelfun_of_depth(code, depth + 1));
    CHECK(levelfun_depth(code) == depth);
  }
}

TEST_CASE("restriction of level functions") {
  const LevelFun l(2, {HfSet(), von_neumann(1), von_neumann(2)});
  CHECK(l.at(BinStr("1")) == von_neumann(2));
  CHECK(l.restrict(1) == LevelFun(1, {HfSet()}));
  CHECK(l.restrict(0) == LevelFun(0, {}));
  CHECK(l.restrict(1).restricts(l));
  CHECK_FALSE(LevelFun(1, {von_neumann(1)}).restricts(l));
  // The code of a restriction is a subset of the code of the whole.
  CHECK(encode_levelfun(l.restrict(1)).subset_of(encode_levelfun(l)));
}
