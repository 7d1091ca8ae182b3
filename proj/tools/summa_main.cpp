// summa: batch front-end for spec documents.
//
//   summa run <spec.json> [--mode exact|interval] [--horizon N] [--eps p/q]
//             [--strict] [--replay-witness <task>[/<condition>]] [--seed u64]
//             [--format text|json] [--threads k]
//   summa validate <spec.json>

#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "summa/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw summa::SchemaError("cannot read spec document '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int exit_for_error(const summa::Error& e) { return summa::is_schema_kind(e.kind()) ? 2 : 3; }

// Replays every witness named by target; returns false if any fails to reproduce.
bool replay_targets(const summa::SpecDocument& doc, const std::vector<summa::TaskResult>& results,
                    const std::string& target) {
  std::vector<std::string> labels;
  if (target.find('/') != std::string::npos) {
    labels.push_back(target);
  } else {
    for (const auto& r : results)
      if (r.id == target)
        for (const auto& c : r.conditions)
          if (c.witness) labels.push_back(target + "/" + c.condition);
    if (labels.empty()) {
      std::cerr << "replay: task '" << target << "' has no witnesses\n";
      return false;
    }
  }
  bool all = true;
  for (const auto& l : labels) {
    summa::ReplayOutcome o = summa::replay(doc, results, l);
    std::cout << "replay " << o.message << "\n";
    all = all && o.found && o.reproduced;
  }
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"summa: ideal-convergence and summability-matrix checker"};
  app.require_subcommand(1);

  std::string spec_path, mode_text = "exact", format_text = "text", replay_target, eps_text;
  std::optional<std::size_t> horizon;
  std::uint64_t seed = 0;
  int threads = 0;
  bool strict = false;

  CLI::App* run = app.add_subcommand("run", "Run every task in a spec document");
  run->add_option("spec", spec_path, "Spec document (JSON)")->required();
  run->add_option("--mode", mode_text, "Arithmetic mode: exact or interval")->check(CLI::IsMember({"exact", "interval"}));
  run->add_option("--horizon", horizon, "Sampling horizon N (overrides task values)");
  run->add_option("--eps", eps_text, "Tolerance p/q (overrides task values)");
  run->add_flag("--strict", strict, "Exit 1 when any verdict is FailsWithWitness");
  run->add_option("--replay-witness", replay_target, "Recompute witnesses of <task> or <task>/<condition>");
  run->add_option("--seed", seed, "Seed for randomized corpus tasks");
  run->add_option("--format", format_text, "Report format: text or json")->check(CLI::IsMember({"text", "json"}));
  run->add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)");

  CLI::App* validate = app.add_subcommand("validate", "Parse a spec document and report schema errors");
  validate->add_option("spec", spec_path, "Spec document (JSON)")->required();
  validate->add_option("--mode", mode_text, "Arithmetic mode: exact or interval")->check(CLI::IsMember({"exact", "interval"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    summa::ArithMode mode = summa::parse_mode(mode_text);
    summa::SpecDocument doc = summa::parse_spec_document(read_file(spec_path), mode);

    if (validate->parsed()) {
      std::cout << "ok: " << doc.tasks.size() << " task(s), " << doc.matrices.size() << " matrices, "
                << doc.sequences.size() << " sequences, " << doc.ideals.size() << " ideals\n";
      return 0;
    }

    if (threads > 0) omp_set_num_threads(threads);
    summa::RunOptions options;
    options.seed = seed;
    if (horizon) options.flags.N = *horizon;
    if (!eps_text.empty()) options.flags.eps = summa::Scalar::parse(eps_text, summa::ArithMode::Exact);

    std::vector<summa::TaskResult> results = summa::run_document(doc, options);
    std::cout << summa::emit_report(results, mode, summa::parse_format(format_text));
    int rc = summa::exit_code(results, strict);
    if (!replay_target.empty() && !replay_targets(doc, results, replay_target) && rc == 0) rc = 3;
    return rc;
  } catch (const summa::Error& e) {
    std::cerr << "error " << summa::to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_for_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
