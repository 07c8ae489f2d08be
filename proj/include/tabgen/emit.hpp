#pragma once

#include <string>

#include "tabgen/calculus.hpp"

namespace tabgen {

// Human-readable listing: values, separators, print table, every rule in
// generated and simplified form, closure rules. Deterministic.
std::string emit_text(const Calculus& calc);

// Theory document in classic proof-assistant rule syntax: one named
// axiom per unsimplified rule ("[| subgoal ; ... |] ==> [ $H, head, $G ]"),
// context-interleaved closure axioms, and one rewrite line per separator
// ("S:<pattern> == S:ti(A0)"). Connectives render through the spec's
// notation map (infix for arity 2) and fall back to their names.
std::string emit_theory(const Calculus& calc);

}  // namespace tabgen
