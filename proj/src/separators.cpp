#include "tabgen/separators.hpp"

#include <algorithm>
#include <cassert>

#include "tabgen/errors.hpp"

namespace tabgen {

int eval_pattern(const FormulaPtr& body, int v, const LogicSpec& spec) {
  if (body->is_atom()) {
    if (body->head() != kPlaceholder)
      throw InternalError("separator body contains atom '" + body->head() + "'");
    return v;
  }
  const Connective* c = spec.find_connective(body->head());
  if (!c) throw InternalError("separator uses unknown connective '" + body->head() + "'");
  std::vector<int> args;
  args.reserve(body->args().size());
  for (const auto& a : body->args()) args.push_back(eval_pattern(a, v, spec));
  return c->apply(args, spec.num_values());
}

PrintTable compute_print_table(const LogicSpec& spec,
                               const std::vector<SeparatorPattern>& separators) {
  PrintTable table;
  table.separators = separators;
  table.prints.resize(static_cast<std::size_t>(spec.num_values()));
  for (int v = 0; v < spec.num_values(); ++v) {
    BinaryPrint& p = table.prints[static_cast<std::size_t>(v)];
    p.reserve(separators.size() + 1);
    p.push_back(spec.is_designated(v) ? Sign::T : Sign::F);
    for (const auto& sep : separators)
      p.push_back(spec.is_designated(eval_pattern(sep.body, v, spec)) ? Sign::T
                                                                      : Sign::F);
  }
  return table;
}

Separability validate_separators(const PrintTable& table) {
  const int n = static_cast<int>(table.prints.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (table.prints[static_cast<std::size_t>(i)] ==
          table.prints[static_cast<std::size_t>(j)])
        return {false, i, j};
  return {};
}

namespace {

// Sign column of one candidate pattern: designation bit per value index.
std::vector<Sign> sign_column(const FormulaPtr& body, const LogicSpec& spec) {
  std::vector<Sign> col(static_cast<std::size_t>(spec.num_values()));
  for (int v = 0; v < spec.num_values(); ++v)
    col[static_cast<std::size_t>(v)] =
        spec.is_designated(eval_pattern(body, v, spec)) ? Sign::T : Sign::F;
  return col;
}

bool all_singleton(const std::vector<int>& classes) {
  std::vector<int> seen;
  for (int c : classes) {
    if (static_cast<std::size_t>(c) >= seen.size()) seen.resize(c + 1, 0);
    if (++seen[static_cast<std::size_t>(c)] > 1) return false;
  }
  return true;
}

// True iff the column distinguishes two values currently in one class.
bool refines(const std::vector<int>& classes, const std::vector<Sign>& col) {
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (classes[i] == classes[j] && col[i] != col[j]) return true;
  return false;
}

void apply_refinement(std::vector<int>& classes, const std::vector<Sign>& col) {
  std::vector<std::pair<int, Sign>> key(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) key[i] = {classes[i], col[i]};
  std::vector<std::pair<int, Sign>> uniq;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto it = std::find(uniq.begin(), uniq.end(), key[i]);
    if (it == uniq.end()) {
      uniq.push_back(key[i]);
      classes[i] = static_cast<int>(uniq.size()) - 1;
    } else {
      classes[i] = static_cast<int>(it - uniq.begin());
    }
  }
}

int pattern_depth(const FormulaPtr& f) {
  if (f->is_atom()) return 0;
  int d = 0;
  for (const auto& a : f->args()) d = std::max(d, pattern_depth(a));
  return d + 1;
}

}  // namespace

SeparatorSearchResult search_separators(const LogicSpec& spec, int max_depth,
                                        bool parallel) {
  (void)parallel;
  SeparatorSearchResult result;

  // Partition of value indices by the prints assembled so far; position 0
  // (the designation bit) is always present.
  std::vector<int> classes(static_cast<std::size_t>(spec.num_values()), 0);
  {
    std::vector<Sign> col(classes.size());
    for (int v = 0; v < spec.num_values(); ++v)
      col[static_cast<std::size_t>(v)] =
          spec.is_designated(v) ? Sign::T : Sign::F;
    apply_refinement(classes, col);
  }
  if (all_singleton(classes)) {
    result.found = true;
    return result;
  }

  // Pattern pool grown level by level; levels[d] marks the end of depth-d
  // patterns inside `pool`.
  std::vector<FormulaPtr> pool{Formula::atom(kPlaceholder)};
  std::vector<std::size_t> level_end{pool.size()};

  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<FormulaPtr> level;
    const std::size_t prev_end = level_end.back();
    for (const auto& conn : spec.connectives) {
      const std::size_t m = static_cast<std::size_t>(conn.arity);
      std::vector<std::size_t> idx(m, 0);
      bool done = false;
      while (!done) {
        // Tuples whose maximal argument depth is not depth-1 were
        // enumerated at an earlier level; skip them.
        int dmax = 0;
        for (std::size_t i : idx) dmax = std::max(dmax, pattern_depth(pool[i]));
        if (dmax == depth - 1) {
          std::vector<FormulaPtr> args;
          args.reserve(m);
          for (std::size_t i : idx) args.push_back(pool[i]);
          level.push_back(Formula::app(conn.name, std::move(args)));
        }
        done = true;
        for (std::size_t pos = m; pos-- > 0;) {
          if (++idx[pos] < prev_end) {
            done = false;
            break;
          }
          idx[pos] = 0;
        }
      }
    }

    std::vector<std::vector<Sign>> columns(level.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && level.size() > 64)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(level.size()); ++i)
      columns[static_cast<std::size_t>(i)] =
          sign_column(level[static_cast<std::size_t>(i)], spec);

    for (std::size_t i = 0; i < level.size(); ++i) {
      ++result.candidates_tried;
      if (!refines(classes, columns[i])) continue;
      apply_refinement(classes, columns[i]);
      SeparatorPattern p;
      p.index = static_cast<int>(result.separators.size()) + 1;
      p.body = level[i];
      result.separators.push_back(std::move(p));
      if (all_singleton(classes)) {
        result.found = true;
        return result;
      }
    }

    pool.insert(pool.end(), level.begin(), level.end());
    level_end.push_back(pool.size());
  }

  result.separators.clear();
  return result;
}

}  // namespace tabgen
