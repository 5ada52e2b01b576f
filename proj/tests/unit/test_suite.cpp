#include <doctest.h>

#include <set>

#include "medforge/error.hpp"
#include "medforge/suite.hpp"

using namespace medforge::suite;

TEST_CASE("default suite passes with at least ten check families") {
  const SuiteReport r = run_verify_suite(SuiteOptions{});
  CHECK(r.passed());
  CHECK(r.checks.size() >= 10);
  std::set<std::string> names;
  for (const auto& c : r.checks) {
    CHECK(c.passed);
    CHECK(c.instances > 0);
    CHECK_FALSE(c.anchor.empty());
    names.insert(c.name);
  }
  CHECK(names.size() == r.checks.size());
}

TEST_CASE("reports are deterministic apart from timing") {
  SuiteOptions o;
  o.seed = 17;
  o.horizon = 5;
  CHECK(run_verify_suite(o).to_text(false) == run_verify_suite(o).to_text(false));
  const std::string text = run_verify_suite(o).to_text(true);
  CHECK(text.find(" time=") != std::string::npos);
}

TEST_CASE("corrupted decoder threshold fails the majority check with witnesses") {
  SuiteOptions o;
  o.corrupt_decoder = true;
  const CheckRecord r = run_check("majority-decoding", o);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().find("f=table(") == 0);
}

TEST_CASE("invalid requests") {
  SuiteOptions o;
  o.horizon = 3;
  CHECK_THROWS_AS(run_check("hf-roundtrip", o), medforge::Error);
  CHECK_THROWS_AS(run_check("no-such-check", SuiteOptions{}), medforge::Error);
}
