#include "tabgen/fuzz.hpp"

#include <algorithm>
#include <cassert>

#include "tabgen/errors.hpp"
#include "tabgen/oracle.hpp"

namespace tabgen {

namespace {

const char* kAtomPool[] = {"p", "q", "r", "s", "u", "v", "w", "x", "y", "z"};

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  assert(bound > 0);
  return rng() % bound;
}

}  // namespace

FormulaPtr random_formula(std::mt19937_64& rng, const LogicSpec& spec,
                          int max_depth, int atoms) {
  if (atoms < 1 || atoms > 10) throw Error("fuzz: atom pool size must be 1..10");
  if (max_depth <= 0 || spec.connectives.empty() || draw(rng, 10) < 3)
    return Formula::atom(kAtomPool[draw(rng, static_cast<std::uint64_t>(atoms))]);
  const Connective& conn =
      spec.connectives[draw(rng, spec.connectives.size())];
  std::vector<FormulaPtr> args;
  args.reserve(static_cast<std::size_t>(conn.arity));
  for (int i = 0; i < conn.arity; ++i)
    args.push_back(random_formula(rng, spec, max_depth - 1, atoms));
  return Formula::app(conn.name, std::move(args));
}

Sequent random_sequent(std::mt19937_64& rng, const LogicSpec& spec,
                       const FuzzConfig& cfg) {
  Sequent seq;
  const std::uint64_t premises =
      draw(rng, static_cast<std::uint64_t>(cfg.max_premises) + 1);
  for (std::uint64_t i = 0; i < premises; ++i)
    seq.premises.push_back(random_formula(rng, spec, cfg.depth, cfg.atoms));
  seq.conclusion = random_formula(rng, spec, cfg.depth, cfg.atoms);
  return seq;
}

FuzzReport run_fuzz(const Calculus& calc, const FuzzConfig& cfg) {
  // Corpus drawn serially from one stream: thread count cannot change it.
  std::mt19937_64 rng(cfg.seed);
  std::vector<Sequent> corpus;
  corpus.reserve(static_cast<std::size_t>(cfg.count));
  for (int i = 0; i < cfg.count; ++i)
    corpus.push_back(random_sequent(rng, calc.spec, cfg));

  std::vector<std::uint8_t> agree(corpus.size(), 0);
  std::vector<std::uint8_t> prover_closed(corpus.size(), 0);
  std::vector<std::uint8_t> oracle_valid(corpus.size(), 0);
  std::vector<std::uint8_t> sets_equal(corpus.size(), 1);
  std::vector<std::uint64_t> models_checked(corpus.size(), 0);

  const auto body = [&](std::size_t i) {
    const Sequent& seq = corpus[i];
    // Nested parallelism off: the per-case oracle runs serially.
    OracleVerdict oracle =
        oracle_entails(calc.spec, seq, {.parallel = false});
    ProofResult proof = prove(calc, seq);
    prover_closed[i] = proof.closed;
    oracle_valid[i] = oracle.valid;
    agree[i] = proof.closed == oracle.valid;
    for (const auto& v : proof.countermodels) {
      bool falsifies = true;
      for (const auto& p : seq.premises)
        falsifies =
            falsifies && calc.spec.is_designated(eval_index(*p, v, calc.spec));
      falsifies = falsifies &&
                  !calc.spec.is_designated(eval_index(*seq.conclusion, v, calc.spec));
      if (!falsifies) agree[i] = 0;
      ++models_checked[i];
    }
    // Both sides sort witnesses the same way, so set equality is a
    // straight vector comparison.
    if (!proof.closed && proof.countermodels != oracle.witnesses)
      sets_equal[i] = 0;
  };

#ifdef _OPENMP
  if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(corpus.size()); ++i)
      body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < corpus.size(); ++i) body(i);
  }
#else
  for (std::size_t i = 0; i < corpus.size(); ++i) body(i);
#endif

  FuzzReport report;
  report.total = static_cast<int>(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    report.countermodels_checked += models_checked[i];
    if (!sets_equal[i]) report.witness_sets_equal = false;
    if (agree[i]) {
      ++report.agreed;
    } else if (!report.first_mismatch) {
      report.first_mismatch = FuzzMismatch{
          static_cast<int>(i), corpus[i].str(),
          prover_closed[i] != 0, oracle_valid[i] != 0};
    }
  }
  return report;
}

}  // namespace tabgen
