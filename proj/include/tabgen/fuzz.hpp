#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "tabgen/calculus.hpp"
#include "tabgen/prover.hpp"

namespace tabgen {

struct FuzzConfig {
  int count = 100;
  int atoms = 3;     // size of the atom pool, at most 10
  int depth = 4;     // maximum formula depth
  std::uint64_t seed = 1;
  int max_premises = 2;
  bool parallel = true;
};

struct FuzzMismatch {
  int index = 0;
  std::string sequent;
  bool prover_closed = false;
  bool oracle_valid = false;
};

struct FuzzReport {
  int total = 0;
  int agreed = 0;
  std::optional<FuzzMismatch> first_mismatch;
  // Extracted counter-models, re-checked against eval_formula here (on
  // top of the prover's own verification).
  std::uint64_t countermodels_checked = 0;
  // Prover counter-model sets equal to the oracle witness sets on every
  // open case.
  bool witness_sets_equal = true;

  bool clean() const { return agreed == total && witness_sets_equal; }
};

// Bounded random formula over the first `atoms` names of a fixed pool.
// Draws use modulo reduction only, so a seed pins the corpus across
// platforms.
FormulaPtr random_formula(std::mt19937_64& rng, const LogicSpec& spec,
                          int max_depth, int atoms);

Sequent random_sequent(std::mt19937_64& rng, const LogicSpec& spec,
                       const FuzzConfig& cfg);

// Seeded corpus of random sequents, each decided by both the prover and
// the brute-force oracle. The corpus is generated up front from the
// seed, so the parallel and serial runs see identical cases and return
// identical reports.
FuzzReport run_fuzz(const Calculus& calc, const FuzzConfig& cfg);

}  // namespace tabgen
