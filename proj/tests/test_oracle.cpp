#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tabgen/errors.hpp"
#include "tabgen/fuzz.hpp"
#include "tabgen/oracle.hpp"
#include "tabgen/parse.hpp"

using namespace tabgen;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("tautology and plain atom") {
  LogicSpec spec = testsup::load_spec("l4");

  OracleVerdict valid = oracle_entails(spec, parse_sequent("|- imp(p,p)", spec));
  CHECK(valid.valid);
  CHECK(valid.falsifying == 0);
  CHECK(valid.witnesses.empty());

  OracleVerdict invalid = oracle_entails(spec, parse_sequent("|- p", spec));
  CHECK(!invalid.valid);
  CHECK(invalid.falsifying == 3);
  REQUIRE(invalid.witnesses.size() == 3);
  CHECK(invalid.witnesses[0].at("p") == 0);
  CHECK(invalid.witnesses[1].at("p") == 1);
  CHECK(invalid.witnesses[2].at("p") == 2);
}

TEST_CASE("premises constrain the counting") {
  LogicSpec spec = testsup::load_spec("l4");
  // p |- p is valid; p |- q fails only where p designated, q not.
  CHECK(oracle_entails(spec, parse_sequent("p |- p", spec)).valid);
  OracleVerdict v = oracle_entails(spec, parse_sequent("p |- q", spec));
  CHECK(!v.valid);
  CHECK(v.falsifying == 3);  // p=1 with q in {0, 1/3, 2/3}
  for (const auto& w : v.witnesses) CHECK(w.at("p") == 3);
}

TEST_CASE("witness order is lexicographic in atom name then value") {
  LogicSpec spec = testsup::load_spec("l3");
  OracleVerdict v =
      oracle_entails(spec, parse_sequent("|- imp(a,b)", spec));
  REQUIRE(!v.valid);
  for (std::size_t i = 1; i < v.witnesses.size(); ++i)
    CHECK(v.witnesses[i - 1] < v.witnesses[i]);
  // First witness is the rank-0 falsifier: smallest a, then smallest b.
  Valuation first = v.witnesses.front();
  for (const auto& w : v.witnesses) {
    CHECK(first.at("a") <= w.at("a"));
    if (first.at("a") == w.at("a")) CHECK(first.at("b") <= w.at("b"));
  }
}

TEST_CASE("count-only mode matches collecting mode") {
  LogicSpec spec = testsup::load_spec("l4");
  Sequent seq = parse_sequent("imp(p,q) |- imp(neg(q),neg(p))", spec);
  OracleVerdict with = oracle_entails(spec, seq, {.collect_witnesses = true});
  OracleVerdict without = oracle_entails(spec, seq, {.collect_witnesses = false});
  CHECK(with.valid == without.valid);
  CHECK(with.falsifying == without.falsifying);
  CHECK(without.witnesses.empty());
}

TEST_CASE("compiled kernel agrees with the naive reference") {
  LogicSpec spec = testsup::load_spec("l4");
  std::mt19937_64 rng(11);
  FuzzConfig cfg;
  for (int i = 0; i < 60; ++i) {
    Sequent seq = random_sequent(rng, spec, cfg);
    OracleVerdict fast = oracle_entails(spec, seq);
    OracleVerdict ref = oracle_entails_serial(spec, seq);
    CHECK(fast.valid == ref.valid);
    CHECK(fast.falsifying == ref.falsifying);
    CHECK(fast.witnesses == ref.witnesses);
  }
}

TEST_CASE("valuation space cap") {
  LogicSpec spec = testsup::load_spec("l4");
  // 16 distinct atoms at 4 values each exceed the 2^30 cap.
  std::string text = "|- imp(a,imp(b,imp(c,imp(d,imp(e,imp(f,imp(g,imp(h,"
                     "imp(i,imp(j,imp(k,imp(l,imp(m,imp(n,imp(o,q)))))))))))))))";
  CHECK_THROWS_AS(oracle_entails(spec, parse_sequent(text, spec)), Error);
}

TEST_CASE("sequent with no atoms cannot arise but constants still work") {
  // A formula with a single atom evaluated across all three values.
  LogicSpec spec = testsup::load_spec("l3");
  OracleVerdict v = oracle_entails(spec, parse_sequent("|- imp(p,p)", spec));
  CHECK(v.valid);
}

TEST_SUITE_END();
