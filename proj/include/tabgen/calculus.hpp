#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tabgen/logic.hpp"
#include "tabgen/separators.hpp"

namespace tabgen {

// One schematic daughter node `sign : theta_position(slot)`; position 0
// is the bare argument slot. Branches keep nodes sorted by (slot,
// position), which is also the order daughters are added in.
struct SchemaNode {
  int slot = 0;
  int position = 0;
  Sign sign = Sign::F;
};

bool operator==(const SchemaNode& a, const SchemaNode& b);
bool operator<(const SchemaNode& a, const SchemaNode& b);

using SchemaBranch = std::vector<SchemaNode>;

struct RuleHead {
  Sign sign = Sign::F;
  int position = 0;        // 0..k: which print slot of the head formula
  std::string connective;  // top connective of the core
};

bool operator==(const RuleHead& a, const RuleHead& b);

// Expansion rule for one head. `branches` is the generated form (one
// branch per satisfying argument tuple, lexicographic tuple order);
// `simplified` is its prime-implicant form, semantically equivalent over
// full sign assignments. Zero branches mean the head alone closes.
struct TableauRule {
  RuleHead head;
  int arity = 1;
  std::vector<SchemaBranch> branches;
  std::vector<SchemaBranch> simplified;
};

// Closure pattern over the print positions of a single formula: a branch
// carrying all the required signs can match no value and closes.
struct ClosureRule {
  std::vector<std::optional<Sign>> pattern;  // length k+1

  int constrained() const;
};

bool operator==(const ClosureRule& a, const ClosureRule& b);

struct BuildOptions {
  bool parallel = true;
  // Depth bound for separator search when the spec declares none.
  int search_depth = 3;
};

struct Calculus {
  LogicSpec spec;
  PrintTable table;
  // Fixed head order: connective-major (declaration order), then print
  // position, then sign F before T.
  std::vector<TableauRule> rules;
  // Unrealizable sign vectors, lexicographic with F < T; one raw closure
  // rule each.
  std::vector<BinaryPrint> closure_prints;
  // Prime-implicant closure set the prover scans (base closure excluded,
  // it is built in).
  std::vector<ClosureRule> closures;

  int print_width() const { return table.width(); }
  const TableauRule* find_rule(const RuleHead& head) const;
  // "FNeg", "Tt2Imp", ...: sign, then "t<position>" unless 0, then the
  // capitalized connective name.
  std::string rule_name(const RuleHead& head) const;
};

TableauRule generate_rule(const LogicSpec& spec, const PrintTable& table,
                          const RuleHead& head);

std::vector<BinaryPrint> unrealizable_prints(const PrintTable& table);
std::vector<ClosureRule> generate_closure_rules(const PrintTable& table);

// Saturates the branch set under single-complement merging (two branches
// identical except one node of opposite sign yield their common part)
// and then drops branches subsumed by a smaller one. Starting from the
// generated per-tuple branches this produces exactly the prime implicant
// cover, so the set stays semantically equivalent over full sign
// assignments.
std::vector<SchemaBranch> simplify_branches(std::vector<SchemaBranch> branches);
std::vector<ClosureRule> simplify_closures(const std::vector<ClosureRule>& rules,
                                           int width);

// Validates the spec, resolves separators (declared ones must separate;
// none declared triggers a bounded search), generates every head's rule
// plus the closure set. Distinct heads are generated in parallel when
// enabled; the result is identical either way.
Calculus build_calculus(const LogicSpec& spec, const BuildOptions& opts = {});

}  // namespace tabgen
