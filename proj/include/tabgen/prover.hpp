#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tabgen/calculus.hpp"
#include "tabgen/strategy.hpp"

namespace tabgen {

// One branch of the tableau. Nodes keep insertion order and are
// deduplicated; expansion marks never reset, so no node is expanded
// twice along a lineage. Children only ever add nodes.
struct Branch {
  int id = 0;
  std::vector<SignedFormula> nodes;
  std::vector<bool> expanded;

  bool contains(const SignedFormula& sf) const;
};

struct ClosureMatch {
  std::string rule;  // "base", "closure#i", or an empty-rule head name
};

// First matching closure: the built-in base rule (T and F on one
// formula), then the simplified closure set in calculus order, each
// instantiated at the minimal-reading cores present on the branch.
std::optional<ClosureMatch> check_closure(const Branch& b, const Calculus& calc);

struct Selection {
  int node_index = -1;
  Reading reading;  // minimal reading of the selected node
};

// Among unexpanded non-literal nodes picks the one whose rule has the
// fewest branches, then the largest head-to-daughter complexity drop,
// then the earliest insertion. Empty when the branch is saturated.
std::optional<Selection> select_node(const Branch& b, const Calculus& calc);

// Pure instantiation of one schematic branch at concrete argument
// formulas; no complexity checks. Exposed for tests and emission.
std::vector<SignedFormula> instantiate_branch(
    const SchemaBranch& branch, const std::vector<FormulaPtr>& args,
    const std::vector<SeparatorPattern>& separators);

// Expands node `node_index` of `b` under `reading`, which must be the
// node's minimal reading (checked). Children inherit all parent nodes;
// daughters already present are not re-added; a child whose node set
// equals its parent's continues that branch rather than duplicating it.
// Throws DescentError if any daughter fails to strictly decrease
// node_complexity; throws Error on re-expansion.
std::vector<Branch> apply_rule_instance(const Branch& b, int node_index,
                                        const Reading& reading,
                                        const Calculus& calc,
                                        std::uint64_t* descent_checks = nullptr);

struct ProveStats {
  std::uint64_t expansions = 0;
  std::uint64_t branches_created = 1;
  std::uint64_t closed_base = 0;
  std::uint64_t closed_print = 0;
  std::uint64_t closed_empty_rule = 0;
  std::uint64_t saturated = 0;
  std::uint64_t descent_checks = 0;
  // Children dropped because an identical node set was already explored;
  // such a child's subtree repeats the first one's outcome exactly.
  std::uint64_t dedup_skips = 0;
  std::size_t max_branch_nodes = 0;
};

struct ProveOptions {
  std::size_t max_countermodels = std::numeric_limits<std::size_t>::max();
  // One line per event: "EXPAND <node> via <rule> -> <n> children",
  // "CLOSE <branch-id> by <rule>", "SATURATED <branch-id>".
  std::function<void(const std::string&)> trace;
};

struct ProofResult {
  bool closed = false;
  // Deduplicated, lexicographic (atom name, value index); every entry
  // verified to falsify the sequent before being returned.
  std::vector<Valuation> countermodels;
  ProveStats stats;
};

// Depth-first tableau for premises |- conclusion: start from
// {T:premise...} + {F:conclusion}, close or expand until every branch is
// closed (valid) or some branch saturates (counter-models extracted).
ProofResult prove(const Calculus& calc, const Sequent& seq,
                  const ProveOptions& opts = {});

// Reads the print constraints off a saturated branch's literals and
// expands them to valuations over `atoms` (unconstrained atoms range
// over every value). Throws InternalError if some atom has no
// consistent value, which would mean a missing closure rule.
std::vector<Valuation> extract_countermodels(const Branch& b, const Calculus& calc,
                                             const std::vector<std::string>& atoms,
                                             std::size_t limit);

}  // namespace tabgen
