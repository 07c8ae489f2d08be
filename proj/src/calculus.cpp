#include "tabgen/calculus.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

#include "tabgen/errors.hpp"

namespace tabgen {

bool operator==(const SchemaNode& a, const SchemaNode& b) {
  return a.slot == b.slot && a.position == b.position && a.sign == b.sign;
}

bool operator<(const SchemaNode& a, const SchemaNode& b) {
  if (a.slot != b.slot) return a.slot < b.slot;
  if (a.position != b.position) return a.position < b.position;
  return a.sign < b.sign;
}

bool operator==(const RuleHead& a, const RuleHead& b) {
  return a.sign == b.sign && a.position == b.position && a.connective == b.connective;
}

int ClosureRule::constrained() const {
  int n = 0;
  for (const auto& p : pattern)
    if (p) ++n;
  return n;
}

bool operator==(const ClosureRule& a, const ClosureRule& b) {
  return a.pattern == b.pattern;
}

const TableauRule* Calculus::find_rule(const RuleHead& head) const {
  for (const auto& r : rules)
    if (r.head == head) return &r;
  return nullptr;
}

std::string Calculus::rule_name(const RuleHead& head) const {
  std::string name(1, sign_char(head.sign));
  if (head.position > 0) name += "t" + std::to_string(head.position);
  std::string conn = head.connective;
  conn[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(conn[0])));
  return name + conn;
}

TableauRule generate_rule(const LogicSpec& spec, const PrintTable& table,
                          const RuleHead& head) {
  const Connective* conn = spec.find_connective(head.connective);
  if (!conn) throw InternalError("generate_rule: unknown connective");
  if (head.position < 0 || head.position >= table.width())
    throw InternalError("generate_rule: print position out of range");

  TableauRule rule;
  rule.head = head;
  rule.arity = conn->arity;

  const int nv = spec.num_values();
  const int k = table.width() - 1;
  std::vector<int> tuple(static_cast<std::size_t>(conn->arity), 0);
  bool done = false;
  while (!done) {
    int w = conn->apply(tuple, nv);
    // Value of theta_position at the connective's output.
    int u = head.position == 0
                ? w
                : eval_pattern(table.separators[static_cast<std::size_t>(
                                                    head.position - 1)]
                                   .body,
                               w, spec);
    Sign s = spec.is_designated(u) ? Sign::T : Sign::F;
    if (s == head.sign) {
      SchemaBranch branch;
      branch.reserve(tuple.size() * static_cast<std::size_t>(k + 1));
      for (std::size_t slot = 0; slot < tuple.size(); ++slot)
        for (int pos = 0; pos <= k; ++pos)
          branch.push_back(
              {static_cast<int>(slot), pos,
               table.prints[static_cast<std::size_t>(tuple[slot])]
                           [static_cast<std::size_t>(pos)]});
      if (std::find(rule.branches.begin(), rule.branches.end(), branch) ==
          rule.branches.end())
        rule.branches.push_back(std::move(branch));
    }
    done = true;
    for (std::size_t pos = tuple.size(); pos-- > 0;) {
      if (++tuple[pos] < nv) {
        done = false;
        break;
      }
      tuple[pos] = 0;
    }
  }

  rule.simplified = simplify_branches(rule.branches);
  return rule;
}

std::vector<BinaryPrint> unrealizable_prints(const PrintTable& table) {
  const int width = table.width();
  if (width > 20) throw SpecError("too many separators for closure enumeration");
  std::vector<BinaryPrint> misses;
  const std::uint32_t total = 1u << width;
  for (std::uint32_t bits = 0; bits < total; ++bits) {
    // Lexicographic with F < T and the leftmost position most
    // significant: position p maps to bit (width-1-p).
    BinaryPrint print(static_cast<std::size_t>(width));
    for (int p = 0; p < width; ++p)
      print[static_cast<std::size_t>(p)] =
          (bits >> (width - 1 - p)) & 1u ? Sign::T : Sign::F;
    if (std::find(table.prints.begin(), table.prints.end(), print) ==
        table.prints.end())
      misses.push_back(std::move(print));
  }
  return misses;
}

std::vector<ClosureRule> generate_closure_rules(const PrintTable& table) {
  std::vector<ClosureRule> rules;
  for (const auto& print : unrealizable_prints(table)) {
    ClosureRule r;
    r.pattern.reserve(print.size());
    for (Sign s : print) r.pattern.emplace_back(s);
    rules.push_back(std::move(r));
  }
  return rules;
}

namespace {

// Branches identical except one node of opposite sign at the same
// (slot, position) merge to their common part.
std::optional<SchemaBranch> merge(const SchemaBranch& a, const SchemaBranch& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::size_t diff = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (diff != a.size()) return std::nullopt;  // second difference
    if (a[i].slot != b[i].slot || a[i].position != b[i].position)
      return std::nullopt;
    diff = i;
  }
  if (diff == a.size()) return std::nullopt;  // identical branches
  SchemaBranch out = a;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(diff));
  return out;
}

// nodes(a) subset of nodes(b), sign included; both sorted.
bool subset(const SchemaBranch& a, const SchemaBranch& b) {
  std::size_t j = 0;
  for (const auto& n : a) {
    while (j < b.size() && b[j] < n) ++j;
    if (j >= b.size() || !(b[j] == n)) return false;
    ++j;
  }
  return true;
}

}  // namespace

std::vector<SchemaBranch> simplify_branches(std::vector<SchemaBranch> branches) {
  // Deduplicate, preserving order.
  std::vector<SchemaBranch> work;
  for (auto& b : branches) {
    assert(std::is_sorted(b.begin(), b.end()));
    if (std::find(work.begin(), work.end(), b) == work.end())
      work.push_back(std::move(b));
  }

  // Saturate: scan pairs in list order, append unseen merges, repeat.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = work.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < work.size(); ++j) {
        auto merged = merge(work[i], work[j]);
        if (!merged) continue;
        if (std::find(work.begin(), work.end(), *merged) == work.end()) {
          work.push_back(std::move(*merged));
          grew = true;
        }
      }
    }
  }

  // Keep only branches not properly subsumed by another.
  std::vector<SchemaBranch> out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < work.size() && !subsumed; ++j)
      subsumed = i != j && work[j].size() < work[i].size() &&
                 subset(work[j], work[i]);
    if (!subsumed) out.push_back(work[i]);
  }
  return out;
}

namespace {

SchemaBranch closure_to_branch(const ClosureRule& rule) {
  SchemaBranch b;
  for (std::size_t p = 0; p < rule.pattern.size(); ++p)
    if (rule.pattern[p]) b.push_back({0, static_cast<int>(p), *rule.pattern[p]});
  return b;
}

ClosureRule branch_to_closure(const SchemaBranch& branch, int width) {
  ClosureRule r;
  r.pattern.resize(static_cast<std::size_t>(width));
  for (const auto& n : branch) {
    assert(n.slot == 0);
    r.pattern[static_cast<std::size_t>(n.position)] = n.sign;
  }
  return r;
}

}  // namespace

std::vector<ClosureRule> simplify_closures(const std::vector<ClosureRule>& rules,
                                           int width) {
  std::vector<SchemaBranch> branches;
  branches.reserve(rules.size());
  for (const auto& r : rules) branches.push_back(closure_to_branch(r));
  std::vector<ClosureRule> out;
  for (const auto& b : simplify_branches(std::move(branches)))
    out.push_back(branch_to_closure(b, width));
  return out;
}

Calculus build_calculus(const LogicSpec& spec, const BuildOptions& opts) {
  spec.validate();

  Calculus calc;
  calc.spec = spec;

  std::vector<SeparatorPattern> seps = spec.separators;
  if (seps.empty()) {
    PrintTable bare = compute_print_table(spec, {});
    if (!validate_separators(bare).separable) {
      SeparatorSearchResult search =
          search_separators(spec, opts.search_depth, opts.parallel);
      if (!search.found)
        throw SpecError("no separator set found up to depth " +
                        std::to_string(opts.search_depth));
      seps = std::move(search.separators);
    }
  }
  calc.table = compute_print_table(spec, seps);
  Separability sep = validate_separators(calc.table);
  if (!sep.separable)
    throw SpecError("separators do not separate values '" +
                    spec.values[static_cast<std::size_t>(sep.first)].label +
                    "' and '" +
                    spec.values[static_cast<std::size_t>(sep.second)].label + "'");
  calc.spec.separators = seps;

  // Head order is fixed; each head's slot is written exactly once, so
  // parallel generation is deterministic.
  std::vector<RuleHead> heads;
  for (const auto& conn : spec.connectives)
    for (int pos = 0; pos < calc.table.width(); ++pos)
      for (Sign sign : {Sign::F, Sign::T})
        heads.push_back({sign, pos, conn.name});
  calc.rules.resize(heads.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (opts.parallel && heads.size() > 1)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(heads.size()); ++i)
    calc.rules[static_cast<std::size_t>(i)] = generate_rule(
        calc.spec, calc.table, heads[static_cast<std::size_t>(i)]);

  calc.closure_prints = unrealizable_prints(calc.table);
  calc.closures =
      simplify_closures(generate_closure_rules(calc.table), calc.table.width());
  return calc;
}

}  // namespace tabgen
