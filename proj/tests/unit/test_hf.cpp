#include <doctest.h>

#include "medforge/error.hpp"
#include "medforge/hf.hpp"
#include "oracle.hpp"

using namespace medforge;

namespace {
const HfSet e;
const HfSet one = HfSet::make({e});
}  // namespace

TEST_CASE("hf_make builds canonical sets") {
  CHECK(HfSet::make({}) == e);
  CHECK(HfSet::make({e, e}) == one);
  const HfSet s = HfSet::make({one, e});
  REQUIRE(s.size() == 2);
  CHECK(s.members()[0] == e);
  CHECK(s.members()[1] == one);
  CHECK(oracle::code(s) == 3);
  CHECK(HfSet::make({one, e}) == HfSet::make({e, one}));
}

TEST_CASE("Ackermann codes of small sets") {
  CHECK(ack_code(e) == 0);
  CHECK(ack_code(one) == 1);
  CHECK(ack_code(HfSet::make({e, one})) == 3);
  CHECK(ack_decode(0) == e);
  CHECK(ack_decode(2) == HfSet::make({one}));
}

TEST_CASE("code and decode agree with the reference on all codes below 4096") {
  for (std::uint64_t n = 0; n < 4096; ++n) {
    const HfSet x = oracle::decode(n);
    CHECK(ack_decode(BigInt(n)) == x);
    CHECK(ack_code(x) == BigInt(n));
    CHECK(x.small_code() == n);
  }
}

TEST_CASE("code order matches rank order and the three-way comparison") {
  for (std::uint64_t a = 0; a < 200; ++a) {
    for (std::uint64_t b = 0; b < 200; ++b) {
      const HfSet x = ack_decode(a), y = ack_decode(b);
      CHECK(((x <=> y) < 0) == (a < b));
      if (x.rank() < y.rank()) CHECK(a < b);
    }
  }
}

TEST_CASE("membership and subset") {
  const HfSet two = von_neumann(2);
  CHECK(two.contains(e));
  CHECK(two.contains(one));
  CHECK_FALSE(one.contains(one));
  CHECK(one.subset_of(two));
  CHECK_FALSE(two.subset_of(one));
  CHECK(e.subset_of(e));
}

TEST_CASE("Kuratowski pairs") {
  CHECK(kpair(e, e) == HfSet::make({one}));
  CHECK(ack_code(kpair(von_neumann(0), von_neumann(1))) == 10);
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t b = 0; b < 64; ++b) {
      const auto [x, y] = kunpair(kpair(ack_decode(a), ack_decode(b)));
      CHECK(x == ack_decode(a));
      CHECK(y == ack_decode(b));
    }
  }
  CHECK_FALSE(try_kunpair(von_neumann(3)).has_value());
}

TEST_CASE("von Neumann naturals") {
  for (std::size_t n = 0; n < 20; ++n) CHECK(as_von_neumann(von_neumann(n)) == n);
  CHECK_FALSE(as_von_neumann(HfSet::make({one})).has_value());
}

TEST_CASE("literals print canonically and parse back") {
  CHECK(to_literal(e) == "{}");
  CHECK(to_literal(parse_hf("#3")) == "{{},{{}}}");
  CHECK(parse_hf("{ {{}} , {} }") == ack_decode(3));
  for (std::uint64_t n = 0; n < 1024; ++n) {
    const HfSet x = ack_decode(n);
    CHECK(parse_hf(to_literal(x)) == x);
  }
  CHECK_THROWS_AS(parse_hf("{{}"), ParseError);
  CHECK_THROWS_AS(parse_hf("{x}"), ParseError);
}

TEST_CASE("large codes respect the budget") {
  // Iterated singletons: codes 1, 2, 4, 16, 65536, 2^65536.
  HfSet tower = e;
  for (int i = 0; i < 5; ++i) tower = HfSet::make({tower});
  CHECK(ack_code(tower) == 65536);
  const HfSet huge = HfSet::make({tower});
  CHECK_THROWS_AS(ack_code(huge), Error);
  CHECK_FALSE(ack_code_below(huge, 100).has_value());
  CHECK(huge.rank() == 6);

  set_bigint_budget_bits(64);
  CHECK_THROWS_AS(ack_code(ack_decode(BigInt(1) << 70)), Error);
  set_bigint_budget_bits(0);
  CHECK(ack_code(ack_decode(BigInt(1) << 70)) == (BigInt(1) << 70));
  CHECK(ack_code_below(HfSet::make({e, one}), 2) == BigInt(3));
  CHECK_FALSE(ack_code_below(HfSet::make({e, one}), 1).has_value());
}
