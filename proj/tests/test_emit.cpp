#include <doctest.h>

#include <string>

#include "support.hpp"
#include "tabgen/emit.hpp"

using namespace tabgen;

namespace {

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

// The lines of one rule's block: label up to (not including) the next label.
std::string block(const std::string& text, const std::string& from,
                  const std::string& to) {
  const std::size_t a = text.find(from);
  const std::size_t b = text.find(to, a);
  REQUIRE(a != std::string::npos);
  REQUIRE(b != std::string::npos);
  return text.substr(a, b - a);
}

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_SUITE_BEGIN("emit");

TEST_CASE("both emitters are deterministic") {
  const Calculus& calc = testsup::calculus("l4");
  CHECK(emit_text(calc) == emit_text(calc));
  CHECK(emit_theory(calc) == emit_theory(calc));
  // A fresh build emits the identical documents.
  Calculus rebuilt = build_calculus(testsup::load_spec("l4"));
  CHECK(emit_text(rebuilt) == emit_text(calc));
  CHECK(emit_theory(rebuilt) == emit_theory(calc));
}

TEST_CASE("text listing covers values, prints, rules, and closures") {
  const std::string text = emit_text(testsup::calculus("l4"));
  CHECK(contains(text, "logic L4: 4 values, 2 connectives, 2 separators"));
  CHECK(contains(text, "separator t2(#) = neg(neg(imp(#,neg(#))))"));
  CHECK(contains(text, "  0   : F T T"));
  CHECK(contains(text, "  1/3 : F F T"));
  CHECK(contains(text, "  2/3 : F F F"));
  CHECK(contains(text, "  1   : T F F"));
  CHECK(contains(text, "FNeg  head F:neg(A0)  (3 branches, simplified 2)"));
  CHECK(contains(text, "Tt2Imp  head T:t2(imp(A0,A1))  (3 branches, simplified 2)"));
  CHECK(contains(text, "base: { T:X, F:X }"));
  CHECK(contains(text, "{ T:A, T:t2(A) }"));
}

TEST_CASE("theory document names every rule with its subgoal count") {
  const std::string doc = emit_theory(testsup::calculus("l4"));
  CHECK(contains(doc, "(* 2-signed tableau theory for L4 *)"));
  CHECK(contains(doc, "(* 4 truth values, 2 separating formulas *)"));

  CHECK(count(block(doc, "FNeg:", "TNeg:"), "[ $H,") == 4);    // 3 subgoals + head
  CHECK(count(block(doc, "TNeg:", "Ft1Neg:"), "[ $H,") == 2);  // 1 subgoal + head
  CHECK(count(block(doc, "TImp:", "Ft1Imp:"), "[ $H,") == 11);
  CHECK(count(block(doc, "Ft1Imp:", "Tt1Imp:"), "[ $H,") == 16);
  CHECK(count(block(doc, "Tt1Imp:", "Ft2Imp:"), "[ $H,") == 2);
  CHECK(count(block(doc, "Tt2Imp:", "(* closure"), "[ $H,") == 4);
}

TEST_CASE("separator rewrites align and render through the notation map") {
  const std::string doc = emit_theory(testsup::calculus("l4"));
  CHECK(contains(doc, "t1_def:  \"S:~A0          == S:t1(A0)\""));
  CHECK(contains(doc, "t2_def:  \"S:~~(A0-->~A0) == S:t2(A0)\""));
}

TEST_CASE("heads render notation infix, prefix, and inside separators") {
  const std::string doc = emit_theory(testsup::calculus("l4"));
  CHECK(contains(doc, "==> [ $H, F:~(A0), $G ]"));
  CHECK(contains(doc, "==> [ $H, F:(A0 --> A1), $G ]"));
  CHECK(contains(doc, "==> [ $H, F:t1(~(A0)), $G ]"));
  CHECK(contains(doc, "==> [ $H, F:t1(A0 --> A1), $G ]"));
  CHECK(contains(doc, "==> [ $H, T:t2(A0 --> A1), $G ]"));
}

TEST_CASE("closure axioms interleave context around the print nodes") {
  const std::string doc = emit_theory(testsup::calculus("l4"));
  CHECK(contains(doc, "CR0:     \"[ $C1, T:A, $C2, F:A, $C3 ]\""));
  CHECK(contains(doc, "CR1:     \"[ $C1, F:A, $C2, T:t1(A), $C3, F:t2(A), $C4 ]\""));
  CHECK(contains(doc, "CR4:     \"[ $C1, T:A, $C2, T:t1(A), $C3, T:t2(A), $C4 ]\""));
  CHECK(count(doc, "CR") == 5);
}

TEST_CASE("a spec without notation falls back to connective names") {
  LogicSpec spec = testsup::load_spec("l3");
  spec.notation.clear();
  const std::string doc = emit_theory(build_calculus(spec));
  CHECK(contains(doc, "F:neg(A0)"));
  CHECK(contains(doc, "imp(A0,A1)"));
  CHECK(!contains(doc, "~"));
  CHECK(!contains(doc, "-->"));
}

TEST_SUITE_END();
