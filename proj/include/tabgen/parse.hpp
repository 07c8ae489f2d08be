#pragma once

#include <string>

#include "tabgen/logic.hpp"

namespace tabgen {

// Parses and validates a truth-table spec document (JSON). Throws
// ParseError for malformed JSON, SpecError for semantic violations.
LogicSpec parse_logic_spec(const std::string& json_text);

// Reads the file and delegates to parse_logic_spec. Throws Error if the
// file cannot be read.
LogicSpec load_logic_spec(const std::string& path);

// Prefix syntax: atoms are [a-z][a-z0-9_]*, applications are
// name(arg1,...,argN) for a declared connective of matching arity.
FormulaPtr parse_formula(const std::string& text, const LogicSpec& spec);

// "f1, ..., fn |- g" with an optionally empty premise list.
Sequent parse_sequent(const std::string& text, const LogicSpec& spec);

// Same formula syntax plus the placeholder leaf `#`.
SeparatorPattern parse_separator_pattern(const std::string& text, int index,
                                         const LogicSpec& spec);

}  // namespace tabgen
