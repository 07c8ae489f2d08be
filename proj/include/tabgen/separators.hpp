#pragma once

#include <cstdint>
#include <vector>

#include "tabgen/logic.hpp"

namespace tabgen {

// Sign vector of length k+1 for k separators; position 0 is the
// designation bit of the value itself, position i the designation bit of
// the i-th separator applied to it.
using BinaryPrint = std::vector<Sign>;

struct PrintTable {
  std::vector<SeparatorPattern> separators;
  std::vector<BinaryPrint> prints;  // indexed by value index

  int width() const { return static_cast<int>(separators.size()) + 1; }
};

// Value of pattern body at placeholder := value v (pure table evaluation).
int eval_pattern(const FormulaPtr& body, int v, const LogicSpec& spec);

PrintTable compute_print_table(const LogicSpec& spec,
                               const std::vector<SeparatorPattern>& separators);

struct Separability {
  bool separable = true;
  // First colliding value pair in (i, j) scan order, i < j.
  int first = -1;
  int second = -1;
};

Separability validate_separators(const PrintTable& table);

struct SeparatorSearchResult {
  bool found = false;
  std::vector<SeparatorPattern> separators;
  std::uint64_t candidates_tried = 0;
};

// Greedy breadth-first search: enumerates placeholder patterns by depth
// (connectives in declaration order, arguments filled left to right) and
// keeps every candidate that refines the current value partition, until
// all values are told apart or depth is exhausted. Candidate sign
// columns within a depth level may be computed in parallel; acceptance
// scans in enumeration order, so the result is deterministic.
SeparatorSearchResult search_separators(const LogicSpec& spec, int max_depth,
                                        bool parallel = true);

}  // namespace tabgen
