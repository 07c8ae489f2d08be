#pragma once

#include <cstdint>
#include <vector>

#include "tabgen/logic.hpp"

namespace tabgen {

struct OracleOptions {
  bool parallel = true;           // chunked OpenMP enumeration when available
  bool collect_witnesses = true;  // false: count falsifying valuations only
};

struct OracleVerdict {
  bool valid = true;
  std::uint64_t falsifying = 0;       // exact count, collected or not
  std::vector<Valuation> witnesses;   // lexicographic (atom name, value index)
};

// Brute-force entailment: valid iff no valuation designates every premise
// while leaving the conclusion undesignated. Enumerates all |V|^k
// valuations over the sequent's atoms; the enumeration is chunked so the
// parallel and serial paths produce identical output. Throws Error when
// the valuation space exceeds an internal safety cap.
OracleVerdict oracle_entails(const LogicSpec& spec, const Sequent& seq,
                             const OracleOptions& opts = {});

// Straight-line reference: per-valuation std::map plus recursive
// eval_index, no compiled form, no chunking, no OpenMP. Kept as the
// independent route the optimized kernel is tested against.
OracleVerdict oracle_entails_serial(const LogicSpec& spec, const Sequent& seq,
                                    bool collect_witnesses = true);

}  // namespace tabgen
