#pragma once

#include <vector>

#include "tabgen/logic.hpp"

namespace tabgen {

// One way to read a formula: position 0 is the formula itself, position
// i >= 1 reads it as the i-th separator applied to `core`.
struct Reading {
  int position = 0;
  FormulaPtr core;
};

bool operator==(const Reading& a, const Reading& b);

// Complexity that ignores separator wrappers is what drives the proof
// strategy; the canonical measure counts every connective.
inline int canonical_complexity(const FormulaPtr& f) { return f->csize(); }

// All readings of f: position 0 first, then each matching separator in
// index order. Matching is outermost and purely syntactic.
std::vector<Reading> theta_readings(const FormulaPtr& f,
                                    const std::vector<SeparatorPattern>& separators);

// The reading with minimal core complexity; ties go to the larger
// position index, so the identity reading is chosen last.
Reading minimal_reading(const FormulaPtr& f,
                        const std::vector<SeparatorPattern>& separators);

// Core complexity of the minimal reading. Zero exactly when the node is
// a literal (some sign : theta_i(atom)).
int node_complexity(const FormulaPtr& f,
                    const std::vector<SeparatorPattern>& separators);

}  // namespace tabgen
