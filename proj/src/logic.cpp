#include "tabgen/logic.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <sstream>

#include "tabgen/errors.hpp"

namespace tabgen {

int Connective::apply(std::span<const int> args, int num_values) const {
  assert(static_cast<int>(args.size()) == arity);
  std::size_t flat = 0;
  for (int a : args) {
    assert(a >= 0 && a < num_values);
    flat = flat * static_cast<std::size_t>(num_values) + static_cast<std::size_t>(a);
  }
  assert(flat < table.size());
  return table[flat];
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

FormulaPtr Formula::atom(std::string name) {
  auto f = std::shared_ptr<Formula>(new Formula());
  f->head_ = std::move(name);
  f->csize_ = 0;
  f->hash_ = mix(0x61746f6d, std::hash<std::string>{}(f->head_));
  return f;
}

FormulaPtr Formula::app(std::string connective, std::vector<FormulaPtr> args) {
  assert(!args.empty());
  auto f = std::shared_ptr<Formula>(new Formula());
  f->head_ = std::move(connective);
  f->args_ = std::move(args);
  f->csize_ = 1;
  f->hash_ = mix(0x617070, std::hash<std::string>{}(f->head_));
  for (const auto& a : f->args_) {
    assert(a);
    f->csize_ += a->csize();
    f->hash_ = mix(f->hash_, a->hash());
  }
  return f;
}

std::string Formula::str() const {
  if (is_atom()) return head_;
  std::string out = head_;
  out += '(';
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) out += ',';
    out += args_[i]->str();
  }
  out += ')';
  return out;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash() || a->csize() != b->csize()) return false;
  if (a->head() != b->head() || a->args().size() != b->args().size()) return false;
  for (std::size_t i = 0; i < a->args().size(); ++i)
    if (!equal(a->args()[i], b->args()[i])) return false;
  return true;
}

std::string SignedFormula::str() const {
  std::string out(1, sign_char(sign));
  out += ':';
  out += formula->str();
  return out;
}

bool operator==(const SignedFormula& a, const SignedFormula& b) {
  return a.sign == b.sign && equal(a.formula, b.formula);
}

FormulaPtr SeparatorPattern::instantiate(const FormulaPtr& arg) const {
  return substitute(body, kPlaceholder, arg);
}

namespace {

bool match_rec(const FormulaPtr& pat, const FormulaPtr& f, FormulaPtr& core) {
  if (pat->is_atom()) {
    if (pat->head() == kPlaceholder) {
      if (!core) {
        core = f;
        return true;
      }
      return equal(core, f);
    }
    // Validated patterns have no atoms besides the placeholder.
    return f->is_atom() && f->head() == pat->head();
  }
  if (f->is_atom() || f->head() != pat->head() ||
      f->args().size() != pat->args().size())
    return false;
  for (std::size_t i = 0; i < pat->args().size(); ++i)
    if (!match_rec(pat->args()[i], f->args()[i], core)) return false;
  return true;
}

}  // namespace

std::optional<FormulaPtr> SeparatorPattern::match(const FormulaPtr& f) const {
  FormulaPtr core;
  if (!match_rec(body, f, core)) return std::nullopt;
  assert(core);
  return core;
}

bool LogicSpec::is_designated(int v) const {
  return std::binary_search(designated.begin(), designated.end(), v);
}

const Connective* LogicSpec::find_connective(const std::string& n) const {
  for (const auto& c : connectives)
    if (c.name == n) return &c;
  return nullptr;
}

int LogicSpec::connective_index(const std::string& n) const {
  for (std::size_t i = 0; i < connectives.size(); ++i)
    if (connectives[i].name == n) return static_cast<int>(i);
  return -1;
}

int LogicSpec::value_index(const std::string& label) const {
  for (const auto& v : values)
    if (v.label == label) return v.index;
  return -1;
}

namespace {

bool placeholder_only_atoms(const FormulaPtr& f, bool& saw_placeholder) {
  if (f->is_atom()) {
    if (f->head() != kPlaceholder) return false;
    saw_placeholder = true;
    return true;
  }
  for (const auto& a : f->args())
    if (!placeholder_only_atoms(a, saw_placeholder)) return false;
  return true;
}

void validate_pattern_connectives(const FormulaPtr& f, const LogicSpec& spec) {
  if (f->is_atom()) return;
  const Connective* c = spec.find_connective(f->head());
  if (!c)
    throw SpecError("separator uses unknown connective '" + f->head() + "'");
  if (c->arity != static_cast<int>(f->args().size()))
    throw SpecError("separator applies '" + f->head() + "' with wrong arity");
  for (const auto& a : f->args()) validate_pattern_connectives(a, spec);
}

}  // namespace

void LogicSpec::validate() const {
  if (values.size() < 2) throw SpecError("logic needs at least two truth values");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].index != static_cast<int>(i))
      throw SpecError("truth value indices out of order");
    if (values[i].label.empty()) throw SpecError("empty truth value label");
    if (!labels.insert(values[i].label).second)
      throw SpecError("duplicate truth value label '" + values[i].label + "'");
  }
  if (designated.empty()) throw SpecError("designated set is empty");
  if (!std::is_sorted(designated.begin(), designated.end()))
    throw SpecError("designated indices not sorted");
  for (std::size_t i = 0; i + 1 < designated.size(); ++i)
    if (designated[i] == designated[i + 1])
      throw SpecError("duplicate designated value");
  for (int d : designated)
    if (d < 0 || d >= num_values()) throw SpecError("designated index out of range");
  if (static_cast<int>(designated.size()) == num_values())
    throw SpecError("no undesignated value: designated set lists every value");

  std::set<std::string> cnames;
  for (const auto& c : connectives) {
    if (!cnames.insert(c.name).second)
      throw SpecError("duplicate connective '" + c.name + "'");
    if (c.arity < 1)
      throw SpecError("connective '" + c.name + "' has arity < 1");
    std::size_t want = 1;
    for (int i = 0; i < c.arity; ++i) want *= values.size();
    if (c.table.size() != want)
      throw SpecError("connective '" + c.name + "' table has wrong size");
    for (int entry : c.table)
      if (entry < 0 || entry >= num_values())
        throw SpecError("connective '" + c.name + "' table entry out of range");
  }
  if (separators.size() > 16)
    throw SpecError("too many separators (limit 16)");
  for (std::size_t i = 0; i < separators.size(); ++i) {
    const auto& s = separators[i];
    if (s.index != static_cast<int>(i) + 1)
      throw SpecError("separator indices must be 1-based and consecutive");
    if (!s.body) throw SpecError("separator has no body");
    bool saw = false;
    if (!placeholder_only_atoms(s.body, saw))
      throw SpecError("separator body contains an atom other than the placeholder");
    if (!saw) throw SpecError("separator body has no placeholder");
    validate_pattern_connectives(s.body, *this);
  }
  for (const auto& [name, glyph] : notation) {
    if (!find_connective(name))
      throw SpecError("notation entry for unknown connective '" + name + "'");
    if (glyph.empty()) throw SpecError("empty notation glyph for '" + name + "'");
  }
}

std::string Sequent::str() const {
  std::string out;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (i) out += ", ";
    out += premises[i]->str();
  }
  if (!premises.empty()) out += ' ';
  out += "|- ";
  out += conclusion->str();
  return out;
}

int eval_index(const Formula& f, const Valuation& v, const LogicSpec& spec) {
  if (f.is_atom()) {
    auto it = v.find(f.head());
    if (it == v.end()) throw Error("eval: no value for atom '" + f.head() + "'");
    return it->second;
  }
  const Connective* c = spec.find_connective(f.head());
  if (!c) throw Error("eval: unknown connective '" + f.head() + "'");
  std::vector<int> args;
  args.reserve(f.args().size());
  for (const auto& a : f.args()) args.push_back(eval_index(*a, v, spec));
  return c->apply(args, spec.num_values());
}

TruthValue eval_formula(const Formula& f, const Valuation& v, const LogicSpec& spec) {
  return spec.values[static_cast<std::size_t>(eval_index(f, v, spec))];
}

namespace {

void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->is_atom()) {
    out.insert(f->head());
    return;
  }
  for (const auto& a : f->args()) collect_atoms(a, out);
}

}  // namespace

std::vector<std::string> atoms_of(const FormulaPtr& f) {
  std::set<std::string> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> atoms_of(const Sequent& seq) {
  std::set<std::string> s;
  for (const auto& p : seq.premises) collect_atoms(p, s);
  collect_atoms(seq.conclusion, s);
  return {s.begin(), s.end()};
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& atom, const FormulaPtr& g) {
  if (f->is_atom()) return f->head() == atom ? g : f;
  std::vector<FormulaPtr> args;
  args.reserve(f->args().size());
  bool changed = false;
  for (const auto& a : f->args()) {
    args.push_back(substitute(a, atom, g));
    changed = changed || args.back().get() != a.get();
  }
  if (!changed) return f;
  return Formula::app(f->head(), std::move(args));
}

std::string valuation_str(const Valuation& v, const LogicSpec& spec) {
  std::string out;
  for (const auto& [atom, val] : v) {
    if (!out.empty()) out += ' ';
    out += atom;
    out += '=';
    out += spec.values[static_cast<std::size_t>(val)].label;
  }
  return out;
}

}  // namespace tabgen
