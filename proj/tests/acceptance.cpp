// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Each criterion runs independently; a throw is a failure, not an abort.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "support.hpp"
#include "tabgen/calculus.hpp"
#include "tabgen/emit.hpp"
#include "tabgen/errors.hpp"
#include "tabgen/fuzz.hpp"
#include "tabgen/oracle.hpp"
#include "tabgen/parse.hpp"
#include "tabgen/prover.hpp"
#include "tabgen/strategy.hpp"

using namespace tabgen;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

SchemaBranch branch(std::initializer_list<const char*> nodes) {
  SchemaBranch out;
  for (const char* n : nodes)
    out.push_back({n[0] - '0', n[2] - '0', n[4] == 'T' ? Sign::T : Sign::F});
  return out;
}

BinaryPrint print(const char* signs) {
  BinaryPrint out;
  for (const char* c = signs; *c; ++c)
    out.push_back(*c == 'T' ? Sign::T : Sign::F);
  return out;
}

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

// Shared corpus results for criteria 5, 6, and 7.
struct CorpusRun {
  int total = 0;
  int agreed = 0;
  std::uint64_t models_checked = 0;
  bool models_valid = true;
  bool witness_sets_equal = true;
  std::uint64_t descent_checks = 0;
  bool descent_fired = false;
  std::string first_failure;
};

CorpusRun run_corpus(const Calculus& calc, int cases) {
  CorpusRun run;
  std::mt19937_64 rng(7);
  FuzzConfig cfg;
  cfg.atoms = 3;
  cfg.depth = 4;
  cfg.max_premises = 2;
  for (int i = 0; i < cases; ++i) {
    Sequent seq = random_sequent(rng, calc.spec, cfg);
    ++run.total;
    OracleVerdict oracle = oracle_entails(calc.spec, seq);
    ProofResult proof;
    try {
      proof = prove(calc, seq);
    } catch (const DescentError&) {
      run.descent_fired = true;
      if (run.first_failure.empty())
        run.first_failure = "descent fired on " + seq.str();
      continue;
    }
    run.descent_checks += proof.stats.descent_checks;
    if (proof.closed == oracle.valid)
      ++run.agreed;
    else if (run.first_failure.empty())
      run.first_failure = "verdicts split on " + seq.str();
    if (!proof.closed) {
      for (const Valuation& m : proof.countermodels) {
        ++run.models_checked;
        bool falsifies = !calc.spec.is_designated(
            eval_index(*seq.conclusion, m, calc.spec));
        for (const auto& p : seq.premises)
          if (!calc.spec.is_designated(eval_index(*p, m, calc.spec)))
            falsifies = false;
        if (!falsifies) {
          run.models_valid = false;
          if (run.first_failure.empty())
            run.first_failure = "bad counter-model for " + seq.str();
        }
      }
      if (proof.countermodels != oracle.witnesses) {
        run.witness_sets_equal = false;
        if (run.first_failure.empty())
          run.first_failure = "witness sets differ on " + seq.str();
      }
    }
  }
  return run;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string label;
    double budget_s;  // 0: no budget of its own
    std::function<void(Outcome&)> check;
  };

  // Corpus shared by criteria 5-7, filled once by criterion 5.
  std::optional<std::vector<CorpusRun>> corpus;
  const std::vector<std::string> corpus_logics = {"classical", "l3", "l4"};
  const int kCases = 500;

  const std::vector<Criterion> criteria = {
      {1, "print table for the four-valued logic", 1.0,
       [](Outcome& out) {
         LogicSpec spec = testsup::load_spec("l4");
         PrintTable table = compute_print_table(spec, spec.separators);
         out.require(table.width() == 3, "print width is not 3");
         out.require(table.prints.size() == 4, "expected four prints");
         const char* rows[] = {"FTT", "FFT", "FFF", "TFF"};
         for (int v = 0; v < 4; ++v)
           out.require(table.prints[static_cast<std::size_t>(v)] == print(rows[v]),
                       std::string("print row ") + std::to_string(v));
       }},
      {2, "showcase rules node for node", 1.0,
       [](Outcome& out) {
         const Calculus& calc = testsup::calculus("l4");
         struct Expected {
           RuleHead head;
           std::vector<SchemaBranch> branches;
         };
         const std::vector<Expected> expected = {
             {{Sign::F, 0, "neg"},
              {branch({"0.0.F", "0.1.F", "0.2.T"}),
               branch({"0.0.F", "0.1.F", "0.2.F"}),
               branch({"0.0.T", "0.1.F", "0.2.F"})}},
             {{Sign::T, 0, "neg"}, {branch({"0.0.F", "0.1.T", "0.2.T"})}},
             {{Sign::T, 1, "neg"}, {branch({"0.0.T", "0.1.F", "0.2.F"})}},
             {{Sign::T, 2, "imp"},
              {branch({"0.0.F", "0.1.F", "0.2.F", "1.0.F", "1.1.T", "1.2.T"}),
               branch({"0.0.T", "0.1.F", "0.2.F", "1.0.F", "1.1.T", "1.2.T"}),
               branch({"0.0.T", "0.1.F", "0.2.F", "1.0.F", "1.1.F", "1.2.T"})}},
         };
         for (const auto& e : expected) {
           const TableauRule* rule = calc.find_rule(e.head);
           out.require(rule != nullptr, "missing rule " + calc.rule_name(e.head));
           if (rule)
             out.require(rule->branches == e.branches,
                         "branches differ for " + calc.rule_name(e.head));
         }
       }},
      {3, "closure prints and the simplified two-node rule", 1.0,
       [](Outcome& out) {
         const Calculus& calc = testsup::calculus("l4");
         const std::vector<BinaryPrint> expected = {print("FTF"), print("TFT"),
                                                    print("TTF"), print("TTT")};
         out.require(unrealizable_prints(calc.table) == expected,
                     "unrealizable prints differ");
         out.require(calc.closure_prints == expected,
                     "calculus closure prints differ");
         const ClosureRule two_node{{Sign::T, std::nullopt, Sign::T}};
         bool found = false;
         for (const auto& c : calc.closures)
           if (c == two_node) found = true;
         out.require(found, "two-node closure T:A, T:t2(A) not present");
       }},
      {4, "simplification shrinks and stays equivalent", 5.0,
       [](Outcome& out) {
         const Calculus& l4 = testsup::calculus("l4");
         const TableauRule* fneg = l4.find_rule({Sign::F, 0, "neg"});
         out.require(fneg && fneg->branches.size() == 3 &&
                         fneg->simplified.size() == 2,
                     "F-negation did not simplify 3 -> 2");
         for (const char* name : {"l4", "l3"}) {
           const Calculus& calc = testsup::calculus(name);
           for (const auto& rule : calc.rules)
             out.require(
                 testsup::branches_equivalent_to_head(calc.spec, calc.table,
                                                      rule.head, rule.arity,
                                                      rule.simplified),
                 std::string(name) + " " + calc.rule_name(rule.head) +
                     " not equivalent after simplification");
         }
       }},
      {5, "prover agrees with the oracle on 1500 random sequents", 60.0,
       [&](Outcome& out) {
         corpus.emplace();
         for (const auto& name : corpus_logics) {
           const CorpusRun run = run_corpus(testsup::calculus(name), kCases);
           out.require(run.total == kCases, name + ": corpus incomplete");
           out.require(run.agreed == run.total,
                       name + ": " + run.first_failure);
           corpus->push_back(run);
         }
       }},
      {6, "counter-models falsify their sequents", 0.0,
       [&](Outcome& out) {
         out.require(corpus.has_value(), "criterion 5 did not run");
         if (!corpus) return;
         for (std::size_t i = 0; i < corpus->size(); ++i) {
           const CorpusRun& run = (*corpus)[i];
           out.require(run.models_valid,
                       corpus_logics[i] + ": " + run.first_failure);
           out.require(run.witness_sets_equal,
                       corpus_logics[i] + ": " + run.first_failure);
           out.require(run.models_checked > 0,
                       corpus_logics[i] + ": no counter-models exercised");
         }
         const Calculus& l4 = testsup::calculus("l4");
         ProofResult res = prove(l4, parse_sequent("|- p", l4.spec));
         const std::vector<Valuation> expected = {
             {{"p", 0}}, {{"p", 1}}, {{"p", 2}}};
         out.require(!res.closed && res.countermodels == expected,
                     "witnesses for the bare-atom sequent differ");
       }},
      {7, "descent check exercised and never fired", 0.0,
       [&](Outcome& out) {
         out.require(corpus.has_value(), "criterion 5 did not run");
         if (!corpus) return;
         std::uint64_t checks = 0;
         for (const auto& run : *corpus) {
           out.require(!run.descent_fired, run.first_failure);
           checks += run.descent_checks;
         }
         out.require(checks > 0, "no descent checks performed");
       }},
      {8, "minimal reading picks the smallest core", 1.0,
       [](Outcome& out) {
         const Calculus& calc = testsup::calculus("l4");
         FormulaPtr f =
             parse_formula("neg(neg(imp(imp(a,b),neg(imp(a,b)))))", calc.spec);
         Reading m = minimal_reading(f, calc.spec.separators);
         out.require(m.position == 2, "reading is not the second separator");
         out.require(m.core->str() == "imp(a,b)", "core is not imp(a,b)");
         Branch b;
         b.nodes.push_back({Sign::T, f});
         b.expanded.assign(1, false);
         auto sel = select_node(b, calc);
         out.require(sel.has_value() && sel->node_index == 0,
                     "node not selected for expansion");
         if (sel) {
           out.require(sel->reading.position == 2 &&
                           sel->reading.core->str() == "imp(a,b)",
                       "selected reading is not the minimal one");
           const TableauRule* rule =
               calc.find_rule({Sign::T, sel->reading.position, "imp"});
           out.require(rule && calc.rule_name(rule->head) == "Tt2Imp" &&
                           rule->branches.size() == 3,
                       "applied rule is not the three-branch Tt2Imp");
         }
       }},
      {9, "theory document structure", 1.0,
       [](Outcome& out) {
         const std::string doc = emit_theory(testsup::calculus("l4"));
         out.require(doc.find("t1_def:") != std::string::npos &&
                         doc.find("t2_def:") != std::string::npos,
                     "separator rewrite lines missing");
         struct Expected {
           const char* from;
           const char* to;
           int subgoals;
         };
         for (const Expected& e :
              std::vector<Expected>{{"FNeg:", "TNeg:", 3},
                                    {"TNeg:", "Ft1Neg:", 1},
                                    {"Tt1Neg:", "Ft2Neg:", 1},
                                    {"Tt2Imp:", "(* closure", 3}}) {
           const std::size_t a = doc.find(e.from);
           const std::size_t b = doc.find(e.to, a);
           if (a == std::string::npos || b == std::string::npos) {
             out.require(false, std::string("rule block missing: ") + e.from);
             continue;
           }
           const int heads = count(doc.substr(a, b - a), "[ $H,");
           out.require(heads == e.subgoals + 1,
                       std::string(e.from) + " subgoal count is " +
                           std::to_string(heads - 1) + ", expected " +
                           std::to_string(e.subgoals));
         }
       }},
      {10, "classical degeneration and boolean fuzz", 10.0,
       [](Outcome& out) {
         const Calculus& calc = testsup::calculus("classical");
         struct Expected {
           RuleHead head;
           std::vector<SchemaBranch> simplified;
         };
         const std::vector<Expected> expected = {
             {{Sign::F, 0, "neg"}, {branch({"0.0.T"})}},
             {{Sign::T, 0, "neg"}, {branch({"0.0.F"})}},
             {{Sign::F, 0, "imp"}, {branch({"0.0.T", "1.0.F"})}},
             {{Sign::T, 0, "imp"}, {branch({"0.0.F"}), branch({"1.0.T"})}},
         };
         for (const auto& e : expected) {
           const TableauRule* rule = calc.find_rule(e.head);
           out.require(rule != nullptr, "missing rule " + calc.rule_name(e.head));
           if (rule)
             out.require(rule->simplified == e.simplified,
                         "simplified form differs for " + calc.rule_name(e.head));
         }
         out.require(calc.closure_prints.empty() && calc.closures.empty(),
                     "classical calculus should close by the base rule alone");

         std::mt19937_64 rng(7);
         FuzzConfig cfg;
         cfg.atoms = 3;
         cfg.depth = 4;
         for (int i = 0; i < 500; ++i) {
           Sequent seq = random_sequent(rng, calc.spec, cfg);
           const bool closed = prove(calc, seq).closed;
           if (closed != testsup::boolref::entails(seq)) {
             out.require(false, "boolean reference disagrees on " + seq.str());
             return;
           }
         }
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.check(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.budget_s > 0 && elapsed >= c.budget_s)
      out.require(false, "over budget");
    if (out.pass) {
      if (c.budget_s > 0)
        std::printf("PASS criterion %2d: %s (%.2fs, budget %.0fs)\n", c.number,
                    c.label.c_str(), elapsed, c.budget_s);
      else
        std::printf("PASS criterion %2d: %s (within criterion 5 corpus)\n",
                    c.number, c.label.c_str());
    } else {
      ++failed;
      std::printf("FAIL criterion %2d: %s -- %s (%.2fs)\n", c.number,
                  c.label.c_str(), out.detail.c_str(), elapsed);
    }
  }
  if (failed == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d of %zu criteria FAILED\n", failed,
                criteria.size());
  return failed == 0 ? 0 : 1;
}
