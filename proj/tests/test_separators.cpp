#include <doctest.h>

#include "support.hpp"
#include "tabgen/logic.hpp"
#include "tabgen/separators.hpp"

using namespace tabgen;

namespace {

BinaryPrint print(const char* signs) {
  BinaryPrint out;
  for (const char* c = signs; *c; ++c)
    out.push_back(*c == 'T' ? Sign::T : Sign::F);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("separators");

TEST_CASE("four-valued print table is exact") {
  LogicSpec spec = testsup::load_spec("l4");
  PrintTable table = compute_print_table(spec, spec.separators);
  REQUIRE(table.prints.size() == 4);
  CHECK(table.width() == 3);
  CHECK(table.prints[0] == print("FTT"));  // 0
  CHECK(table.prints[1] == print("FFT"));  // 1/3
  CHECK(table.prints[2] == print("FFF"));  // 2/3
  CHECK(table.prints[3] == print("TFF"));  // 1
  CHECK(validate_separators(table).separable);
}

TEST_CASE("pattern evaluation composes through the tables") {
  LogicSpec spec = testsup::load_spec("l4");
  // theta2 at value v: neg(neg(imp(v, neg(v)))).
  const FormulaPtr& body = spec.separators[1].body;
  CHECK(eval_pattern(body, 0, spec) == 3);  // imp(0,1)=1, double neg keeps it
  CHECK(eval_pattern(body, 1, spec) == 3);
  CHECK(eval_pattern(body, 2, spec) == 2);
  CHECK(eval_pattern(body, 3, spec) == 0);
}

TEST_CASE("missing separators leave values indistinguishable") {
  LogicSpec spec = testsup::load_spec("l4");
  // Only theta1: 1/3 and 2/3 both print (F,F).
  PrintTable partial =
      compute_print_table(spec, {spec.separators[0]});
  Separability sep = validate_separators(partial);
  CHECK(!sep.separable);
  CHECK(sep.first == 1);
  CHECK(sep.second == 2);
}

TEST_CASE("two-valued logic needs no separators at all") {
  LogicSpec spec = testsup::load_spec("classical");
  PrintTable table = compute_print_table(spec, {});
  CHECK(validate_separators(table).separable);

  SeparatorSearchResult r = search_separators(spec, 3);
  CHECK(r.found);
  CHECK(r.separators.empty());
}

TEST_CASE("search recovers a separator for the three-valued logic") {
  LogicSpec spec = testsup::load_spec("l3");
  spec.separators.clear();
  SeparatorSearchResult r = search_separators(spec, 3);
  REQUIRE(r.found);
  REQUIRE(r.separators.size() == 1);
  CHECK(r.separators[0].body->str() == "neg(#)");
  CHECK(validate_separators(compute_print_table(spec, r.separators)).separable);
}

TEST_CASE("search finds a separating pair for the four-valued logic") {
  LogicSpec spec = testsup::load_spec("l4");
  spec.separators.clear();
  SeparatorSearchResult r = search_separators(spec, 4);
  REQUIRE(r.found);
  CHECK(r.separators.size() == 2);
  CHECK(r.candidates_tried > 0);
  CHECK(validate_separators(compute_print_table(spec, r.separators)).separable);
  // Indices are renumbered to consecutive print positions.
  for (std::size_t i = 0; i < r.separators.size(); ++i)
    CHECK(r.separators[i].index == static_cast<int>(i) + 1);
}

TEST_CASE("search respects the depth bound") {
  LogicSpec spec = testsup::load_spec("l4");
  spec.separators.clear();
  // Depth 0 allows no patterns at all; three values share print F.
  SeparatorSearchResult r = search_separators(spec, 0);
  CHECK(!r.found);
}

TEST_CASE("search result is thread-count independent") {
  LogicSpec spec = testsup::load_spec("l4");
  spec.separators.clear();
  SeparatorSearchResult a = search_separators(spec, 4, true);
  SeparatorSearchResult b = search_separators(spec, 4, false);
  REQUIRE(a.found == b.found);
  REQUIRE(a.separators.size() == b.separators.size());
  for (std::size_t i = 0; i < a.separators.size(); ++i)
    CHECK(equal(a.separators[i].body, b.separators[i].body));
}

TEST_SUITE_END();
