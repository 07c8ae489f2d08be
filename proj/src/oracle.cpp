#include "tabgen/oracle.hpp"

#include <algorithm>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tabgen/errors.hpp"

namespace tabgen {

namespace {

// 2^30 valuations is roughly a minute of enumeration; beyond that the
// request is almost certainly a mistake.
constexpr std::uint64_t kMaxValuations = 1ull << 30;

std::uint64_t valuation_count(int num_values, std::size_t atoms) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < atoms; ++i) {
    if (n > kMaxValuations / static_cast<std::uint64_t>(num_values))
      throw Error("oracle: valuation space exceeds safety cap");
    n *= static_cast<std::uint64_t>(num_values);
  }
  return n;
}

// Rank decomposes base |V| with the alphabetically first atom as the most
// significant digit, so rank order equals lexicographic witness order.
void rank_to_digits(std::uint64_t rank, int num_values, std::vector<int>& digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<int>(rank % static_cast<std::uint64_t>(num_values));
    rank /= static_cast<std::uint64_t>(num_values);
  }
}

bool advance_digits(std::vector<int>& digits, int num_values) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < num_values) return true;
    digits[i] = 0;
  }
  return false;
}

// Formula flattened to a postorder program over an atom-slot array;
// avoids per-valuation map lookups in the enumeration loop.
struct Compiled {
  struct Op {
    int atom_slot = -1;  // >= 0: push value of slot
    int conn = -1;       // >= 0: apply spec.connectives[conn]
  };
  std::vector<Op> ops;
  std::size_t max_stack = 0;
};

void compile_rec(const Formula& f, const std::vector<std::string>& atoms,
                 const LogicSpec& spec, Compiled& out, std::size_t depth) {
  out.max_stack = std::max(out.max_stack, depth + 1);
  if (f.is_atom()) {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), f.head());
    assert(it != atoms.end() && *it == f.head());
    out.ops.push_back({static_cast<int>(it - atoms.begin()), -1});
    return;
  }
  for (const auto& a : f.args()) compile_rec(*a, atoms, spec, out, depth);
  int idx = spec.connective_index(f.head());
  if (idx < 0) throw Error("oracle: unknown connective '" + f.head() + "'");
  out.ops.push_back({-1, idx});
}

Compiled compile(const Formula& f, const std::vector<std::string>& atoms,
                 const LogicSpec& spec) {
  Compiled c;
  compile_rec(f, atoms, spec, c, 0);
  return c;
}

int run_compiled(const Compiled& c, const std::vector<int>& slots,
                 const LogicSpec& spec, std::vector<int>& stack) {
  std::size_t sp = 0;
  for (const auto& op : c.ops) {
    if (op.atom_slot >= 0) {
      stack[sp++] = slots[static_cast<std::size_t>(op.atom_slot)];
    } else {
      const Connective& conn = spec.connectives[static_cast<std::size_t>(op.conn)];
      std::size_t m = static_cast<std::size_t>(conn.arity);
      sp -= m;
      stack[sp] = conn.apply(std::span<const int>(stack.data() + sp, m),
                             spec.num_values());
      ++sp;
    }
  }
  assert(sp == 1);
  return stack[0];
}

Valuation valuation_at(std::uint64_t rank, const std::vector<std::string>& atoms,
                       int num_values) {
  std::vector<int> digits(atoms.size());
  rank_to_digits(rank, num_values, digits);
  Valuation v;
  for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = digits[i];
  return v;
}

}  // namespace

OracleVerdict oracle_entails(const LogicSpec& spec, const Sequent& seq,
                             const OracleOptions& opts) {
  if (!seq.conclusion) throw Error("oracle: sequent has no conclusion");
  const std::vector<std::string> atoms = atoms_of(seq);
  const int nv = spec.num_values();
  const std::uint64_t total = valuation_count(nv, atoms.size());

  std::vector<Compiled> premises;
  premises.reserve(seq.premises.size());
  std::size_t max_stack = 1;
  for (const auto& p : seq.premises) {
    premises.push_back(compile(*p, atoms, spec));
    max_stack = std::max(max_stack, premises.back().max_stack);
  }
  Compiled conclusion = compile(*seq.conclusion, atoms, spec);
  max_stack = std::max(max_stack, conclusion.max_stack);

  const std::uint64_t chunk = 4096;
  const std::uint64_t nchunks = (total + chunk - 1) / chunk;
  std::vector<std::uint64_t> counts(nchunks, 0);
  std::vector<std::vector<std::uint64_t>> hits(opts.collect_witnesses ? nchunks : 0);

  // Each chunk writes only its own slot, so the result is identical no
  // matter how iterations are scheduled.
  const auto body = [&](std::uint64_t c) {
    const std::uint64_t begin = c * chunk;
    const std::uint64_t end = std::min(total, begin + chunk);
    std::vector<int> digits(atoms.size());
    rank_to_digits(begin, nv, digits);
    std::vector<int> stack(max_stack);
    std::uint64_t found = 0;
    for (std::uint64_t r = begin; r < end; ++r) {
      bool premises_hold = true;
      for (const auto& p : premises) {
        if (!spec.is_designated(run_compiled(p, digits, spec, stack))) {
          premises_hold = false;
          break;
        }
      }
      if (premises_hold &&
          !spec.is_designated(run_compiled(conclusion, digits, spec, stack))) {
        ++found;
        if (opts.collect_witnesses) hits[c].push_back(r);
      }
      if (r + 1 < end) {
        bool more = advance_digits(digits, nv);
        assert(more);
        (void)more;
      }
    }
    counts[c] = found;
  };

#ifdef _OPENMP
  if (opts.parallel && total >= 2 * chunk) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c)
      body(static_cast<std::uint64_t>(c));
  } else {
    for (std::uint64_t c = 0; c < nchunks; ++c) body(c);
  }
#else
  for (std::uint64_t c = 0; c < nchunks; ++c) body(c);
#endif

  OracleVerdict verdict;
  for (std::uint64_t c = 0; c < nchunks; ++c) verdict.falsifying += counts[c];
  verdict.valid = verdict.falsifying == 0;
  if (opts.collect_witnesses) {
    verdict.witnesses.reserve(verdict.falsifying);
    for (const auto& chunk_hits : hits)
      for (std::uint64_t r : chunk_hits)
        verdict.witnesses.push_back(valuation_at(r, atoms, nv));
  }
  return verdict;
}

OracleVerdict oracle_entails_serial(const LogicSpec& spec, const Sequent& seq,
                                    bool collect_witnesses) {
  if (!seq.conclusion) throw Error("oracle: sequent has no conclusion");
  const std::vector<std::string> atoms = atoms_of(seq);
  const int nv = spec.num_values();
  const std::uint64_t total = valuation_count(nv, atoms.size());

  OracleVerdict verdict;
  std::vector<int> digits(atoms.size(), 0);
  for (std::uint64_t r = 0; r < total; ++r) {
    Valuation v;
    for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = digits[i];
    bool premises_hold = true;
    for (const auto& p : seq.premises) {
      if (!spec.is_designated(eval_index(*p, v, spec))) {
        premises_hold = false;
        break;
      }
    }
    if (premises_hold && !spec.is_designated(eval_index(*seq.conclusion, v, spec))) {
      ++verdict.falsifying;
      if (collect_witnesses) verdict.witnesses.push_back(std::move(v));
    }
    advance_digits(digits, nv);
  }
  verdict.valid = verdict.falsifying == 0;
  return verdict;
}

}  // namespace tabgen
