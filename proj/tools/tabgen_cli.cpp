// Batch front-end for the tableau generator. One subcommand per run;
// exit codes: 0 success (or Valid), 1 Invalid / nothing found, 2 error,
// 3 fuzz mismatch.
#include <cstddef>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "tabgen/calculus.hpp"
#include "tabgen/emit.hpp"
#include "tabgen/errors.hpp"
#include "tabgen/fuzz.hpp"
#include "tabgen/oracle.hpp"
#include "tabgen/parse.hpp"
#include "tabgen/prover.hpp"
#include "tabgen/separators.hpp"

namespace {

int write_document(const std::string& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return 2;
  }
  out << doc;
  return 0;
}

int cmd_gen(const std::string& spec_path, const std::string& format,
            const std::string& out_path, int search_depth) {
  tabgen::LogicSpec spec = tabgen::load_logic_spec(spec_path);
  tabgen::Calculus calc =
      tabgen::build_calculus(spec, {.parallel = true, .search_depth = search_depth});
  const std::string doc =
      format == "theory" ? tabgen::emit_theory(calc) : tabgen::emit_text(calc);
  return write_document(doc, out_path);
}

int cmd_prove(const std::string& spec_path, const std::string& sequent_text,
              bool trace, std::size_t max_countermodels, int search_depth) {
  tabgen::LogicSpec spec = tabgen::load_logic_spec(spec_path);
  tabgen::Calculus calc =
      tabgen::build_calculus(spec, {.parallel = true, .search_depth = search_depth});
  tabgen::Sequent seq = tabgen::parse_sequent(sequent_text, calc.spec);

  tabgen::ProveOptions opts;
  opts.max_countermodels = max_countermodels;
  if (trace)
    opts.trace = [](const std::string& line) { std::cerr << line << "\n"; };

  tabgen::ProofResult result = tabgen::prove(calc, seq, opts);
  if (result.closed) {
    std::cout << "CLOSED\n";
  } else {
    std::cout << "OPEN\n";
    for (const auto& v : result.countermodels)
      std::cout << "countermodel: " << tabgen::valuation_str(v, calc.spec) << "\n";
  }
  std::cout << "expansions: " << result.stats.expansions
            << "  branches: " << result.stats.branches_created
            << "  max branch size: " << result.stats.max_branch_nodes << "\n";
  return result.closed ? 0 : 1;
}

int cmd_check(const std::string& spec_path, const std::string& sequent_text) {
  tabgen::LogicSpec spec = tabgen::load_logic_spec(spec_path);
  tabgen::Sequent seq = tabgen::parse_sequent(sequent_text, spec);
  tabgen::OracleVerdict verdict = tabgen::oracle_entails(spec, seq);
  if (verdict.valid) {
    std::cout << "VALID\n";
    return 0;
  }
  std::cout << "INVALID (" << verdict.falsifying << " falsifying valuations)\n";
  for (const auto& v : verdict.witnesses)
    std::cout << "witness: " << tabgen::valuation_str(v, spec) << "\n";
  return 1;
}

int cmd_fuzz(const std::string& spec_path, const tabgen::FuzzConfig& cfg,
             int search_depth) {
  tabgen::LogicSpec spec = tabgen::load_logic_spec(spec_path);
  tabgen::Calculus calc =
      tabgen::build_calculus(spec, {.parallel = true, .search_depth = search_depth});
  tabgen::FuzzReport report = tabgen::run_fuzz(calc, cfg);
  std::cout << report.agreed << "/" << report.total << " agree\n";
  if (report.clean()) return 0;
  if (report.first_mismatch) {
    const auto& m = *report.first_mismatch;
    std::cout << "mismatch at case " << m.index << ": " << m.sequent
              << "\n  prover: " << (m.prover_closed ? "CLOSED" : "OPEN")
              << "  oracle: " << (m.oracle_valid ? "VALID" : "INVALID") << "\n";
  }
  if (!report.witness_sets_equal)
    std::cout << "witness sets differ on some open case\n";
  return 3;
}

int cmd_separators(const std::string& spec_path, int max_depth) {
  tabgen::LogicSpec spec = tabgen::load_logic_spec(spec_path);
  // Search from the bare tables, ignoring any separators the file declares.
  spec.separators.clear();
  tabgen::SeparatorSearchResult result =
      tabgen::search_separators(spec, max_depth);
  if (!result.found) {
    std::cout << "no separator set found up to depth " << max_depth << " (tried "
              << result.candidates_tried << " candidates)\n";
    return 1;
  }
  std::cout << "found " << result.separators.size() << " separator"
            << (result.separators.size() == 1 ? "" : "s") << " (tried "
            << result.candidates_tried << " candidates)\n";
  for (const auto& sep : result.separators)
    std::cout << "t" << sep.index << " = " << sep.body->str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tableau calculus generator and prover for finite-valued logics"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string sequent_text;
  std::string format = "text";
  std::string out_path;
  int search_depth = 3;
  bool trace = false;
  std::size_t max_countermodels = std::numeric_limits<std::size_t>::max();
  tabgen::FuzzConfig fuzz_cfg;
  bool fuzz_serial = false;
  int sep_depth = 3;

  CLI::App* gen = app.add_subcommand("gen", "Generate a calculus and print it");
  gen->add_option("spec", spec_path, "Logic spec JSON file")->required();
  gen->add_option("--format", format, "Output format: text or theory")
      ->check(CLI::IsMember({"text", "theory"}));
  gen->add_option("--out", out_path, "Write the document to a file");
  gen->add_option("--search-depth", search_depth,
                  "Separator search depth when the spec declares none");

  CLI::App* prove = app.add_subcommand("prove", "Run the tableau prover");
  prove->add_option("spec", spec_path, "Logic spec JSON file")->required();
  prove->add_option("sequent", sequent_text, "Sequent, e.g. \"p |- imp(q,p)\"")
      ->required();
  prove->add_flag("--trace", trace, "Log every expansion and closure to stderr");
  prove->add_option("--max-countermodels", max_countermodels,
                    "Stop extraction after this many counter-models");
  prove->add_option("--search-depth", search_depth,
                    "Separator search depth when the spec declares none");

  CLI::App* check = app.add_subcommand("check", "Evaluate a sequent by brute force");
  check->add_option("spec", spec_path, "Logic spec JSON file")->required();
  check->add_option("sequent", sequent_text, "Sequent, e.g. \"p |- imp(q,p)\"")
      ->required();

  CLI::App* fuzz =
      app.add_subcommand("fuzz", "Compare prover and oracle on random sequents");
  fuzz->add_option("spec", spec_path, "Logic spec JSON file")->required();
  fuzz->add_option("--count", fuzz_cfg.count, "Number of random sequents");
  fuzz->add_option("--atoms", fuzz_cfg.atoms, "Atom pool size (1..10)");
  fuzz->add_option("--depth", fuzz_cfg.depth, "Maximum formula depth");
  fuzz->add_option("--seed", fuzz_cfg.seed, "Corpus seed");
  fuzz->add_option("--max-premises", fuzz_cfg.max_premises,
                   "Maximum premises per sequent");
  fuzz->add_flag("--serial", fuzz_serial, "Check cases one at a time");
  fuzz->add_option("--search-depth", search_depth,
                   "Separator search depth when the spec declares none");

  CLI::App* seps =
      app.add_subcommand("separators", "Search for a separating formula set");
  seps->add_option("spec", spec_path, "Logic spec JSON file")->required();
  seps->add_option("--max-depth", sep_depth, "Pattern depth bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(gen))
      return cmd_gen(spec_path, format, out_path, search_depth);
    if (app.got_subcommand(prove))
      return cmd_prove(spec_path, sequent_text, trace, max_countermodels,
                       search_depth);
    if (app.got_subcommand(check)) return cmd_check(spec_path, sequent_text);
    if (app.got_subcommand(fuzz)) {
      fuzz_cfg.parallel = !fuzz_serial;
      return cmd_fuzz(spec_path, fuzz_cfg, search_depth);
    }
    if (app.got_subcommand(seps)) return cmd_separators(spec_path, sep_depth);
  } catch (const tabgen::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
