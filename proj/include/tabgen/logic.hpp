#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tabgen {

// The two signs of the calculus. F orders before T; sign vectors are
// enumerated lexicographically with the leftmost position most significant.
enum class Sign : std::uint8_t { F = 0, T = 1 };

inline char sign_char(Sign s) { return s == Sign::T ? 'T' : 'F'; }
inline Sign flip(Sign s) { return s == Sign::T ? Sign::F : Sign::T; }

struct TruthValue {
  int index = 0;
  std::string label;
};

// Finitary truth function. The table is stored flat with the first
// argument outermost: entry(v1..vm) sits at ((v1*n + v2)*n + ...)*n + vm
// where n is the number of truth values.
struct Connective {
  std::string name;
  int arity = 1;
  std::vector<int> table;

  int apply(std::span<const int> args, int num_values) const;
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Atoms carry no arguments; connective
// applications carry at least one. Hash and canonical complexity are
// fixed at construction, so equality checks stay cheap and the
// complexity measure needs no external memo table.
class Formula {
 public:
  static FormulaPtr atom(std::string name);
  static FormulaPtr app(std::string connective, std::vector<FormulaPtr> args);

  bool is_atom() const { return args_.empty(); }
  const std::string& head() const { return head_; }
  const std::vector<FormulaPtr>& args() const { return args_; }

  // Canonical complexity: 0 for atoms, 1 + sum over arguments otherwise.
  int csize() const { return csize_; }
  std::size_t hash() const { return hash_; }
  std::string str() const;

 private:
  Formula() = default;

  std::string head_;
  std::vector<FormulaPtr> args_;
  int csize_ = 0;
  std::size_t hash_ = 0;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

struct SignedFormula {
  Sign sign = Sign::T;
  FormulaPtr formula;

  std::string str() const;
};

bool operator==(const SignedFormula& a, const SignedFormula& b);

// Placeholder leaf used in separator patterns; not a legal atom name, so
// it can never collide with user input.
inline constexpr const char* kPlaceholder = "#";

// Unary formula template over a single placeholder, e.g. neg(neg(imp(#,neg(#)))).
// Position 0 is implicitly the identity and is never stored as a pattern.
struct SeparatorPattern {
  int index = 1;     // 1-based print position among the declared separators
  FormulaPtr body;   // >= 1 placeholder leaf, no other atoms

  FormulaPtr instantiate(const FormulaPtr& arg) const;

  // Outermost syntactic match: returns the core c with instantiate(c) == f,
  // or nothing. Repeated placeholder occurrences must bind equal subtrees.
  std::optional<FormulaPtr> match(const FormulaPtr& f) const;

  std::string str() const { return body->str(); }
};

// Truth-table description of one logic. Values are indexed by their
// position in `values`; `designated` holds sorted value indices.
struct LogicSpec {
  std::string name;
  std::vector<TruthValue> values;
  std::vector<int> designated;
  std::vector<Connective> connectives;
  std::vector<SeparatorPattern> separators;
  std::map<std::string, std::string> notation;  // connective name -> glyph

  int num_values() const { return static_cast<int>(values.size()); }
  bool is_designated(int v) const;
  const Connective* find_connective(const std::string& name) const;
  int connective_index(const std::string& name) const;  // -1 if unknown
  int value_index(const std::string& label) const;      // -1 if unknown

  // Throws SpecError on any structural violation (empty or duplicate
  // values, designated set empty / total / unknown, malformed tables,
  // invalid separator bodies).
  void validate() const;
};

// Total assignment of value indices to atom names. std::map keeps atoms
// in lexicographic order, which fixes the witness order everywhere.
using Valuation = std::map<std::string, int>;

struct Sequent {
  std::vector<FormulaPtr> premises;
  FormulaPtr conclusion;

  std::string str() const;
};

// Evaluates f under v; throws Error if an atom of f is missing from v.
int eval_index(const Formula& f, const Valuation& v, const LogicSpec& spec);
TruthValue eval_formula(const Formula& f, const Valuation& v, const LogicSpec& spec);

// Sorted, deduplicated atom names.
std::vector<std::string> atoms_of(const FormulaPtr& f);
std::vector<std::string> atoms_of(const Sequent& s);

// f with every occurrence of the named atom replaced by g.
FormulaPtr substitute(const FormulaPtr& f, const std::string& atom, const FormulaPtr& g);

std::string valuation_str(const Valuation& v, const LogicSpec& spec);

}  // namespace tabgen
