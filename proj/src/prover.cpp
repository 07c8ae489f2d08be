#include "tabgen/prover.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>
#include <unordered_set>

#include "tabgen/errors.hpp"

namespace tabgen {

bool Branch::contains(const SignedFormula& sf) const {
  for (const auto& n : nodes)
    if (n == sf) return true;
  return false;
}

namespace {

// Per-formula facts recomputed identically at every branch the formula
// appears on: interned id (structural equality), minimal reading, and
// per-sign rule shape. One cache serves a whole prove call.
struct NodeFacts {
  FormulaPtr formula;
  std::uint64_t id = 0;
  Reading reading;
  std::uint64_t core_id = 0;
  bool literal = false;
  // Indexed by sign: simplified branch count and complexity drop of the
  // node's rule, meaningful only for non-literals.
  std::size_t rule_branches[2] = {0, 0};
  int drop[2] = {0, 0};
  bool rule_ready[2] = {false, false};
};

class NodeCache {
 public:
  explicit NodeCache(const Calculus& calc) : calc_(calc) {}

  std::size_t index_of(const FormulaPtr& f) {
    auto& bucket = buckets_[f->hash()];
    for (std::size_t idx : bucket)
      if (equal(entries_[idx].formula, f)) return idx;
    const std::size_t idx = entries_.size();
    bucket.push_back(idx);
    NodeFacts facts;
    facts.formula = f;
    facts.id = idx;
    entries_.push_back(std::move(facts));
    // Fill the reading after insertion: interning the core below may
    // re-enter and grow the table.
    Reading r = minimal_reading(f, calc_.spec.separators);
    const std::uint64_t core_id =
        equal(r.core, f) ? idx : static_cast<std::uint64_t>(index_of(r.core));
    NodeFacts& e = entries_[idx];
    e.core_id = core_id;
    e.literal = r.core->is_atom();
    e.reading = std::move(r);
    return idx;
  }

  const NodeFacts& facts(const FormulaPtr& f) { return entries_[index_of(f)]; }

  // (branch count, drop) of the rule for `sign : f`, f non-literal.
  std::pair<std::size_t, int> rule_shape(const FormulaPtr& f, Sign sign);

  // Branch state key: sorted (formula id, sign) codes. Equal keys mean
  // equal node sets, so equal closure/saturation behavior downstream.
  std::vector<std::uint64_t> state_key(const Branch& b) {
    std::vector<std::uint64_t> key;
    key.reserve(b.nodes.size());
    for (const auto& n : b.nodes)
      key.push_back(index_of(n.formula) << 1 |
                    static_cast<std::uint64_t>(n.sign));
    std::sort(key.begin(), key.end());
    return key;
  }

 private:
  const Calculus& calc_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
  std::vector<NodeFacts> entries_;
};

// Minimal-reading decomposition of every node, grouped by core formula
// in first-appearance order: for each core, the sign present at each
// print position (at most one per position; a conflict would be a base
// closure and is caught before this is used).
struct CoreConstraints {
  std::uint64_t core_id = 0;
  std::vector<std::optional<Sign>> signs;  // indexed by print position
};

std::vector<CoreConstraints> core_constraints(const Branch& b, const Calculus& calc,
                                              NodeCache& cache) {
  std::vector<CoreConstraints> out;
  std::unordered_map<std::uint64_t, std::size_t> by_core;
  for (const auto& node : b.nodes) {
    const NodeFacts& facts = cache.facts(node.formula);
    auto [it, fresh] = by_core.try_emplace(facts.core_id, out.size());
    if (fresh)
      out.push_back({facts.core_id,
                     std::vector<std::optional<Sign>>(
                         static_cast<std::size_t>(calc.print_width()))});
    out[it->second].signs[static_cast<std::size_t>(facts.reading.position)] =
        node.sign;
  }
  return out;
}

std::optional<ClosureMatch> check_closure_cached(const Branch& b,
                                                 const Calculus& calc,
                                                 NodeCache& cache) {
  // Base closure: T and F on one formula, syntactic equality.
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(b.nodes.size());
  for (const auto& node : b.nodes) {
    const std::uint64_t code = cache.facts(node.formula).id << 1 |
                               static_cast<std::uint64_t>(node.sign);
    if (seen.count(code ^ 1)) return ClosureMatch{"base"};
    seen.insert(code);
  }

  const std::vector<CoreConstraints> cores = core_constraints(b, calc, cache);
  for (std::size_t r = 0; r < calc.closures.size(); ++r) {
    const ClosureRule& rule = calc.closures[r];
    for (const auto& core : cores) {
      bool hit = true;
      for (std::size_t p = 0; p < rule.pattern.size() && hit; ++p)
        if (rule.pattern[p])
          hit = core.signs[p].has_value() && *core.signs[p] == *rule.pattern[p];
      if (hit) return ClosureMatch{"closure#" + std::to_string(r + 1)};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ClosureMatch> check_closure(const Branch& b, const Calculus& calc) {
  NodeCache cache(calc);
  return check_closure_cached(b, calc, cache);
}

std::vector<SignedFormula> instantiate_branch(
    const SchemaBranch& branch, const std::vector<FormulaPtr>& args,
    const std::vector<SeparatorPattern>& separators) {
  std::vector<SignedFormula> out;
  out.reserve(branch.size());
  for (const auto& node : branch) {
    assert(node.slot >= 0 && node.slot < static_cast<int>(args.size()));
    const FormulaPtr& arg = args[static_cast<std::size_t>(node.slot)];
    FormulaPtr f =
        node.position == 0
            ? arg
            : separators[static_cast<std::size_t>(node.position - 1)].instantiate(arg);
    out.push_back({node.sign, std::move(f)});
  }
  return out;
}

namespace {

const TableauRule& rule_for(const Calculus& calc, Sign sign, const Reading& r) {
  assert(!r.core->is_atom());
  RuleHead head{sign, r.position, r.core->head()};
  const TableauRule* rule = calc.find_rule(head);
  if (!rule)
    throw InternalError("no rule for head " + calc.rule_name(head));
  return *rule;
}

// Largest node_complexity over all daughters of the rule instantiated at
// the reading's core arguments; 0 for immediate-closure rules.
int max_daughter_complexity(const TableauRule& rule, const Reading& r,
                            const Calculus& calc) {
  int worst = 0;
  for (const auto& branch : rule.simplified)
    for (const auto& sf :
         instantiate_branch(branch, r.core->args(), calc.spec.separators))
      worst = std::max(worst,
                       node_complexity(sf.formula, calc.spec.separators));
  return worst;
}

std::pair<std::size_t, int> NodeCache::rule_shape(const FormulaPtr& f, Sign sign) {
  const std::size_t idx = index_of(f);
  const int s = static_cast<int>(sign);
  if (!entries_[idx].rule_ready[s]) {
    // Copy: rule_for cannot grow the table, but stay ref-safe.
    const Reading r = entries_[idx].reading;
    const TableauRule& rule = rule_for(calc_, sign, r);
    const int drop =
        canonical_complexity(r.core) - max_daughter_complexity(rule, r, calc_);
    NodeFacts& e = entries_[idx];
    e.rule_branches[s] = rule.simplified.size();
    e.drop[s] = drop;
    e.rule_ready[s] = true;
  }
  const NodeFacts& e = entries_[idx];
  return {e.rule_branches[s], e.drop[s]};
}

std::optional<Selection> select_node_cached(const Branch& b, NodeCache& cache) {
  std::optional<Selection> best;
  std::size_t best_branches = 0;
  int best_drop = 0;
  for (std::size_t i = 0; i < b.nodes.size(); ++i) {
    if (b.expanded[i]) continue;
    if (cache.facts(b.nodes[i].formula).literal) continue;
    const auto [branches, drop] =
        cache.rule_shape(b.nodes[i].formula, b.nodes[i].sign);
    if (!best || branches < best_branches ||
        (branches == best_branches && drop > best_drop)) {
      best = Selection{static_cast<int>(i),
                       cache.facts(b.nodes[i].formula).reading};
      best_branches = branches;
      best_drop = drop;
    }
  }
  return best;
}

}  // namespace

std::optional<Selection> select_node(const Branch& b, const Calculus& calc) {
  NodeCache cache(calc);
  return select_node_cached(b, cache);
}

std::vector<Branch> apply_rule_instance(const Branch& b, int node_index,
                                        const Reading& reading,
                                        const Calculus& calc,
                                        std::uint64_t* descent_checks) {
  if (node_index < 0 || static_cast<std::size_t>(node_index) >= b.nodes.size())
    throw Error("apply: node index out of range");
  if (b.expanded[static_cast<std::size_t>(node_index)])
    throw Error("apply: node already expanded");
  const auto& seps = calc.spec.separators;
  const SignedFormula& node = b.nodes[static_cast<std::size_t>(node_index)];
  if (!(minimal_reading(node.formula, seps) == reading))
    throw Error("apply: reading is not the node's minimal reading");
  if (reading.core->is_atom()) throw Error("apply: literal node has no rule");

  const TableauRule& rule = rule_for(calc, node.sign, reading);
  const int head_nc = canonical_complexity(reading.core);

  std::vector<Branch> children;
  for (const auto& schema : rule.simplified) {
    Branch child = b;
    child.expanded[static_cast<std::size_t>(node_index)] = true;
    for (auto& sf : instantiate_branch(schema, reading.core->args(), seps)) {
      if (descent_checks) ++*descent_checks;
      if (node_complexity(sf.formula, seps) >= head_nc)
        throw DescentError("daughter " + sf.str() +
                           " does not decrease complexity below head " +
                           node.str());
      if (!child.contains(sf)) {
        child.nodes.push_back(std::move(sf));
        child.expanded.push_back(false);
      }
    }
    bool duplicate = false;
    for (const auto& prev : children)
      if (prev.nodes.size() == child.nodes.size() &&
          std::equal(prev.nodes.begin(), prev.nodes.end(), child.nodes.begin()))
        duplicate = true;
    if (!duplicate) children.push_back(std::move(child));
  }
  return children;
}

std::vector<Valuation> extract_countermodels(const Branch& b, const Calculus& calc,
                                             const std::vector<std::string>& atoms,
                                             std::size_t limit) {
  const auto& seps = calc.spec.separators;
  const int nv = calc.spec.num_values();

  // Print constraints per atom, from the literals' minimal readings.
  std::vector<std::vector<std::pair<int, Sign>>> constraints(atoms.size());
  for (const auto& node : b.nodes) {
    Reading r = minimal_reading(node.formula, seps);
    if (!r.core->is_atom()) continue;
    auto it = std::lower_bound(atoms.begin(), atoms.end(), r.core->head());
    if (it == atoms.end() || *it != r.core->head())
      throw InternalError("extract: literal over unknown atom " + r.core->head());
    constraints[static_cast<std::size_t>(it - atoms.begin())].push_back(
        {r.position, node.sign});
  }

  std::vector<std::vector<int>> candidates(atoms.size());
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (int v = 0; v < nv; ++v) {
      bool ok = true;
      for (const auto& [pos, sign] : constraints[a])
        if (calc.table.prints[static_cast<std::size_t>(v)]
                            [static_cast<std::size_t>(pos)] != sign) {
          ok = false;
          break;
        }
      if (ok) candidates[a].push_back(v);
    }
    if (candidates[a].empty())
      throw InternalError("extract: no value satisfies the literals on atom '" +
                          atoms[a] + "' (missing closure rule)");
  }

  // Cartesian product, first atom most significant: lexicographic order.
  std::vector<Valuation> out;
  std::vector<std::size_t> pick(atoms.size(), 0);
  bool done = false;
  while (!done && out.size() < limit) {
    Valuation v;
    for (std::size_t a = 0; a < atoms.size(); ++a)
      v[atoms[a]] = candidates[a][pick[a]];
    out.push_back(std::move(v));
    done = true;
    for (std::size_t a = atoms.size(); a-- > 0;) {
      if (++pick[a] < candidates[a].size()) {
        done = false;
        break;
      }
      pick[a] = 0;
    }
  }
  return out;
}

ProofResult prove(const Calculus& calc, const Sequent& seq, const ProveOptions& opts) {
  if (!seq.conclusion) throw Error("prove: sequent has no conclusion");
  const std::vector<std::string> atoms = atoms_of(seq);

  Branch root;
  root.id = 0;
  for (const auto& p : seq.premises) {
    SignedFormula sf{Sign::T, p};
    if (!root.contains(sf)) {
      root.nodes.push_back(std::move(sf));
      root.expanded.push_back(false);
    }
  }
  {
    SignedFormula sf{Sign::F, seq.conclusion};
    if (!root.contains(sf)) {
      root.nodes.push_back(std::move(sf));
      root.expanded.push_back(false);
    }
  }

  ProofResult result;
  int next_id = 1;
  bool any_open = false;
  std::vector<Branch> stack;

  NodeCache cache(calc);
  // Node sets already pushed once. A second branch with the same set
  // closes or saturates to the same counter-models, so it is dropped.
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const {
      std::size_t h = 1469598103934665603ull;
      for (std::uint64_t x : key) h = (h ^ x) * 1099511628211ull;
      return h;
    }
  };
  std::unordered_set<std::vector<std::uint64_t>, KeyHash> visited;
  visited.insert(cache.state_key(root));
  stack.push_back(std::move(root));

  const auto trace = [&](const std::string& line) {
    if (opts.trace) opts.trace(line);
  };

  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    result.stats.max_branch_nodes =
        std::max(result.stats.max_branch_nodes, b.nodes.size());

    if (auto closed = check_closure_cached(b, calc, cache)) {
      if (closed->rule == "base")
        ++result.stats.closed_base;
      else
        ++result.stats.closed_print;
      trace("CLOSE " + std::to_string(b.id) + " by " + closed->rule);
      continue;
    }

    std::optional<Selection> sel = select_node_cached(b, cache);
    if (!sel) {
      ++result.stats.saturated;
      any_open = true;
      trace("SATURATED " + std::to_string(b.id));
      std::size_t room = opts.max_countermodels - result.countermodels.size();
      for (auto& v : extract_countermodels(b, calc, atoms, room)) {
        // Soundness check before anything is reported.
        for (const auto& p : seq.premises)
          if (!calc.spec.is_designated(eval_index(*p, v, calc.spec)))
            throw InternalError("extract: model fails premise " + p->str());
        if (calc.spec.is_designated(eval_index(*seq.conclusion, v, calc.spec)))
          throw InternalError("extract: model satisfies conclusion");
        result.countermodels.push_back(std::move(v));
      }
      continue;
    }

    const SignedFormula& node = b.nodes[static_cast<std::size_t>(sel->node_index)];
    RuleHead head{node.sign, sel->reading.position, sel->reading.core->head()};
    const std::string name = calc.rule_name(head);
    std::string node_str = node.str();
    std::vector<Branch> children = apply_rule_instance(
        b, sel->node_index, sel->reading, calc, &result.stats.descent_checks);
    ++result.stats.expansions;

    if (children.empty()) {
      // Immediate closure: the head matches no argument tuple at all.
      ++result.stats.closed_empty_rule;
      trace("CLOSE " + std::to_string(b.id) + " by " + name);
      continue;
    }

    // Continuations (no node added) always proceed: they carry the
    // expansion mark forward. Node-adding children are dropped when
    // their node set was pushed before.
    std::vector<Branch> kept;
    kept.reserve(children.size());
    for (auto& child : children) {
      if (child.nodes.size() > b.nodes.size() &&
          !visited.insert(cache.state_key(child)).second) {
        ++result.stats.dedup_skips;
        continue;
      }
      child.id = next_id++;
      ++result.stats.branches_created;
      kept.push_back(std::move(child));
    }

    trace("EXPAND " + node_str + " via " + name + " -> " +
          std::to_string(kept.size()) + " children");
    // Leftmost child on top of the stack.
    for (std::size_t i = kept.size(); i-- > 0;)
      stack.push_back(std::move(kept[i]));
  }

  result.closed = !any_open;
  std::sort(result.countermodels.begin(), result.countermodels.end());
  result.countermodels.erase(
      std::unique(result.countermodels.begin(), result.countermodels.end()),
      result.countermodels.end());
  return result;
}

}  // namespace tabgen
