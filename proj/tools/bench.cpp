// Compares the three entailment routes (naive serial reference, compiled
// serial kernel, compiled OpenMP kernel) and serial vs parallel fuzz
// batches. Agreement between routes is checked on every run; --smoke
// shrinks the sizes so the comparison can run under ctest.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "tabgen/calculus.hpp"
#include "tabgen/errors.hpp"
#include "tabgen/fuzz.hpp"
#include "tabgen/oracle.hpp"
#include "tabgen/parse.hpp"

#ifndef BENCH_SPEC_DIR
#define BENCH_SPEC_DIR "specs"
#endif

namespace {

using Clock = std::chrono::steady_clock;

double best_ms(int reps, const std::function<void()>& fn) {
  double best = 0.0;
  for (int i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    fn();
    const std::chrono::duration<double, std::milli> took = Clock::now() - start;
    if (i == 0 || took.count() < best) best = took.count();
  }
  return best;
}

const char* kAtoms[] = {"p", "q", "r", "s", "u", "v", "w", "x", "y", "z"};

// Deterministic dense formula touching `atoms` distinct atoms: fold with
// the first binary connective, then wrap once per unary connective.
tabgen::FormulaPtr dense_formula(const tabgen::LogicSpec& spec, int atoms) {
  const tabgen::Connective* binary = nullptr;
  const tabgen::Connective* unary = nullptr;
  for (const auto& c : spec.connectives) {
    if (c.arity == 2 && !binary) binary = &c;
    if (c.arity == 1 && !unary) unary = &c;
  }
  tabgen::FormulaPtr acc = tabgen::Formula::atom(kAtoms[0]);
  for (int i = 1; i < atoms; ++i) {
    tabgen::FormulaPtr next = tabgen::Formula::atom(kAtoms[i]);
    if (unary && i % 2 == 0) next = tabgen::Formula::app(unary->name, {next});
    if (binary)
      acc = tabgen::Formula::app(binary->name, {acc, next});
    else if (unary)
      acc = tabgen::Formula::app(unary->name, {acc});
  }
  return acc;
}

bool report_oracle(const tabgen::LogicSpec& spec, int atoms, int reps) {
  tabgen::Sequent seq;
  seq.premises.push_back(dense_formula(spec, atoms));
  // A bare-atom conclusion keeps the sequent invalid for any reasonable
  // spec, so the count-only routes have real work to agree on.
  seq.conclusion = tabgen::Formula::atom(kAtoms[atoms - 1]);

  std::uint64_t total = 1;
  for (int i = 0; i < atoms; ++i) total *= spec.values.size();
  std::cout << "oracle kernel: " << atoms << " atoms, " << total
            << " valuations\n";

  tabgen::OracleVerdict ref, serial, parallel;
  const double ref_ms = best_ms(
      reps, [&] { ref = tabgen::oracle_entails_serial(spec, seq, false); });
  const double serial_ms = best_ms(reps, [&] {
    serial = tabgen::oracle_entails(
        spec, seq, {.parallel = false, .collect_witnesses = false});
  });
  const double parallel_ms = best_ms(reps, [&] {
    parallel = tabgen::oracle_entails(
        spec, seq, {.parallel = true, .collect_witnesses = false});
  });

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::cout << std::fixed << std::setprecision(2);
  std::cout << "  reference (naive serial)  " << std::setw(10) << ref_ms
            << " ms   falsifying=" << ref.falsifying << "\n";
  std::cout << "  kernel (compiled serial)  " << std::setw(10) << serial_ms
            << " ms   falsifying=" << serial.falsifying << "\n";
  std::cout << "  kernel (OpenMP, " << threads << " threads) " << std::setw(8)
            << parallel_ms << " ms   falsifying=" << parallel.falsifying
            << "\n";

  const bool agree = ref.valid == serial.valid && serial.valid == parallel.valid &&
                     ref.falsifying == serial.falsifying &&
                     serial.falsifying == parallel.falsifying;
  std::cout << "  agreement: " << (agree ? "OK" : "MISMATCH")
            << "   kernel speedup: " << ref_ms / std::max(serial_ms, 1e-6)
            << "x   parallel speedup: "
            << serial_ms / std::max(parallel_ms, 1e-6) << "x\n";
  return agree;
}

bool report_fuzz(const tabgen::Calculus& calc, int count) {
  tabgen::FuzzConfig cfg;
  cfg.count = count;
  cfg.seed = 7;
  std::cout << "fuzz batch: " << count << " cases\n";

  tabgen::FuzzReport serial, parallel;
  cfg.parallel = false;
  const double serial_ms = best_ms(1, [&] { serial = tabgen::run_fuzz(calc, cfg); });
  cfg.parallel = true;
  const double parallel_ms =
      best_ms(1, [&] { parallel = tabgen::run_fuzz(calc, cfg); });

  std::cout << "  serial    " << std::setw(10) << serial_ms << " ms   "
            << serial.agreed << "/" << serial.total << " agree\n";
  std::cout << "  parallel  " << std::setw(10) << parallel_ms << " ms   "
            << parallel.agreed << "/" << parallel.total << " agree\n";

  const bool agree = serial.clean() && parallel.clean() &&
                     serial.agreed == parallel.agreed &&
                     serial.countermodels_checked == parallel.countermodels_checked;
  std::cout << "  agreement: " << (agree ? "OK" : "MISMATCH")
            << "   parallel speedup: " << serial_ms / std::max(parallel_ms, 1e-6)
            << "x\n";
  return agree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial reference vs parallel kernel benchmark"};
  std::string spec_path = std::string(BENCH_SPEC_DIR) + "/l4.json";
  int atoms = 8;
  int count = 200;
  int reps = 3;
  bool smoke = false;
  app.add_option("--spec", spec_path, "Logic spec JSON file");
  app.add_option("--atoms", atoms, "Atoms in the oracle benchmark formula");
  app.add_option("--count", count, "Fuzz batch size");
  app.add_option("--reps", reps, "Timing repetitions (best is reported)");
  app.add_flag("--smoke", smoke, "Small sizes for use as a test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (smoke) {
    atoms = std::min(atoms, 6);
    count = std::min(count, 50);
    reps = 1;
  }

  try {
    const tabgen::LogicSpec spec = tabgen::load_logic_spec(spec_path);
    const tabgen::Calculus calc = tabgen::build_calculus(spec);
    const bool oracle_ok = report_oracle(spec, atoms, reps);
    const bool fuzz_ok = report_fuzz(calc, count);
    if (oracle_ok && fuzz_ok) {
      std::cout << "all routes agree\n";
      return 0;
    }
    std::cout << "route disagreement detected\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
