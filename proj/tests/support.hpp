#pragma once

// Shared fixtures: spec loading, reference checkers, and the brute-force
// semantic comparisons the structural tests lean on.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tabgen/calculus.hpp"
#include "tabgen/logic.hpp"
#include "tabgen/parse.hpp"
#include "tabgen/separators.hpp"

#ifndef TABGEN_SPEC_DIR
#define TABGEN_SPEC_DIR "specs"
#endif

namespace testsup {

inline std::string spec_path(const std::string& name) {
  return std::string(TABGEN_SPEC_DIR) + "/" + name + ".json";
}

inline tabgen::LogicSpec load_spec(const std::string& name) {
  return tabgen::load_logic_spec(spec_path(name));
}

// Calculi are immutable once built; build each fixture once per binary.
inline const tabgen::Calculus& calculus(const std::string& name) {
  static std::map<std::string, tabgen::Calculus> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, tabgen::build_calculus(load_spec(name))).first;
  return it->second;
}

// True iff the value tuple satisfies the rule head: evaluating the head
// formula (core at print position `head.position`) over the tuple lands
// on the head's sign.
inline bool tuple_satisfies_head(const tabgen::LogicSpec& spec,
                                 const tabgen::PrintTable& table,
                                 const tabgen::RuleHead& head,
                                 const std::vector<int>& tuple) {
  const tabgen::Connective* conn = spec.find_connective(head.connective);
  const int v = conn->apply(tuple, static_cast<int>(spec.values.size()));
  const int u = head.position == 0
                    ? v
                    : tabgen::eval_pattern(
                          table.separators[static_cast<std::size_t>(
                              head.position - 1)].body,
                          v, spec);
  const tabgen::Sign s =
      spec.is_designated(u) ? tabgen::Sign::T : tabgen::Sign::F;
  return s == head.sign;
}

// True iff every node of the schematic branch holds under the tuple:
// node (slot, position, sign) holds when the print of the slot's value
// carries that sign at that position.
inline bool tuple_satisfies_branch(const tabgen::PrintTable& table,
                                   const tabgen::SchemaBranch& branch,
                                   const std::vector<int>& tuple) {
  for (const auto& node : branch) {
    const auto& print = table.prints[static_cast<std::size_t>(
        tuple[static_cast<std::size_t>(node.slot)])];
    if (print[static_cast<std::size_t>(node.position)] != node.sign)
      return false;
  }
  return true;
}

// The semantic-equivalence check for a rule form: the union of the
// branches' regions must equal the head's satisfying region over all
// |V|^arity tuples.
inline bool branches_equivalent_to_head(
    const tabgen::LogicSpec& spec, const tabgen::PrintTable& table,
    const tabgen::RuleHead& head, int arity,
    const std::vector<tabgen::SchemaBranch>& branches) {
  const int n = static_cast<int>(spec.values.size());
  std::vector<int> tuple(static_cast<std::size_t>(arity), 0);
  while (true) {
    bool covered = false;
    for (const auto& b : branches)
      if (tuple_satisfies_branch(table, b, tuple)) {
        covered = true;
        break;
      }
    if (covered != tuple_satisfies_head(spec, table, head, tuple)) return false;
    int i = arity - 1;
    while (i >= 0 && tuple[static_cast<std::size_t>(i)] == n - 1)
      tuple[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return true;
    ++tuple[static_cast<std::size_t>(i)];
  }
}

// Independent two-valued reference: formulas over at most 6 atoms
// evaluated on bitmasks, no tabgen machinery involved.
namespace boolref {

inline std::uint64_t eval_mask(const tabgen::Formula& f,
                               const std::vector<std::string>& atoms,
                               const std::vector<std::uint64_t>& masks,
                               std::uint64_t full) {
  if (f.is_atom()) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i] == f.head()) return masks[i];
    return 0;
  }
  if (f.head() == "neg")
    return full & ~eval_mask(*f.args()[0], atoms, masks, full);
  // imp
  const std::uint64_t a = eval_mask(*f.args()[0], atoms, masks, full);
  const std::uint64_t b = eval_mask(*f.args()[1], atoms, masks, full);
  return (full & ~a) | b;
}

// Valid iff every assignment satisfying all premises satisfies the
// conclusion.
inline bool entails(const tabgen::Sequent& seq) {
  const std::vector<std::string> atoms = tabgen::atoms_of(seq);
  const std::uint64_t rows = 1ull << atoms.size();
  const std::uint64_t full = rows == 64 ? ~0ull : (1ull << rows) - 1;
  std::vector<std::uint64_t> masks(atoms.size(), 0);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::uint64_t row = 0; row < rows; ++row)
      if (row >> i & 1) masks[i] |= 1ull << row;
  std::uint64_t sat = full;
  for (const auto& p : seq.premises)
    sat &= eval_mask(*p, atoms, masks, full);
  return (sat & ~eval_mask(*seq.conclusion, atoms, masks, full)) == 0;
}

}  // namespace boolref

// Small random logic for property tests: 2..4 values, random proper
// designated set, one unary and one binary connective with random
// tables. Declares no separators, so building searches for them.
inline tabgen::LogicSpec random_logic(std::mt19937_64& rng) {
  tabgen::LogicSpec spec;
  const int n = 2 + static_cast<int>(rng() % 3);
  spec.name = "rand" + std::to_string(n);
  for (int i = 0; i < n; ++i)
    spec.values.push_back({i, "v" + std::to_string(i)});
  // Proper nonempty designated set, always containing the top value.
  spec.designated.push_back(n - 1);
  for (int i = 1; i + 1 < n; ++i)
    if (rng() % 2) spec.designated.push_back(i);
  std::sort(spec.designated.begin(), spec.designated.end());

  tabgen::Connective u;
  u.name = "f";
  u.arity = 1;
  for (int i = 0; i < n; ++i)
    u.table.push_back(static_cast<int>(rng() % n));
  spec.connectives.push_back(std::move(u));

  tabgen::Connective b;
  b.name = "g";
  b.arity = 2;
  for (int i = 0; i < n * n; ++i)
    b.table.push_back(static_cast<int>(rng() % n));
  spec.connectives.push_back(std::move(b));
  return spec;
}

}  // namespace testsup
