//
// Copyright 2026 The prunevc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "prunevc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "prunevc/matcher.hpp"
#include "prunevc/oracle.hpp"
#include "prunevc/pruner.hpp"
#include "prunevc/term.hpp"
#include "prunevc/vcgen.hpp"

namespace prunevc::cli {

namespace {

struct RunConfig {
  std::vector<std::string> commutative;
  std::int64_t w_env = 10;
  std::int64_t w_lcs = 1;

  std::string old_path;
  std::string new_path;
  std::string graph_path;
  bool no_match = false;
  std::string emit_substitution;

  std::vector<std::int64_t> range{-4, 7};
  std::uint64_t max_assignments = std::uint64_t{1} << 20;

  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::size_t max_atoms = 8;
  std::size_t max_depth = 3;
  std::string mode = "prop";
};

// A failure already reported; carries the exit code.
struct Exit {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CommutativityRegistry registry_of(const RunConfig& cfg) {
  CommutativityRegistry reg;
  for (const std::string& s : cfg.commutative) reg.add(s);
  return reg;
}

PruneOptions prune_options(const RunConfig& cfg) {
  if (cfg.w_env < 0 || cfg.w_lcs < 0) throw ConfigError("similarity weights must be >= 0");
  PruneOptions opts;
  opts.match_constants = !cfg.no_match;
  opts.match.registry = registry_of(cfg);
  opts.match.weights = SimilarityWeights{cfg.w_env, cfg.w_lcs};
  return opts;
}

Universe universe_of(const RunConfig& cfg) {
  if (cfg.range.size() != 2 || cfg.range[0] > cfg.range[1]) {
    throw ConfigError("--range expects <lo> <hi> with lo <= hi");
  }
  return Universe{cfg.range[0], cfg.range[1], cfg.max_assignments};
}

Term load_formula(Session& session, const std::string& path, std::ostream& err) {
  const std::string text = read_file(path);
  try {
    return parse_term(session, text);
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    throw Exit{kParseError};
  }
}

int run_prune(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session session;
  const Term old_vc = load_formula(session, cfg.old_path, err);
  const Term new_vc = load_formula(session, cfg.new_path, err);
  const PruneResult result = prune_with_details(session, old_vc, new_vc, prune_options(cfg));
  if (!cfg.emit_substitution.empty()) {
    std::ofstream sub(cfg.emit_substitution, std::ios::binary);
    if (!sub) throw ConfigError("cannot write '" + cfg.emit_substitution + "'");
    sub << result.substitution.to_text();
  }
  out << print_term(result.pruned) << "\n";
  return result.pruned.is("false") ? kPrunedToFalse : kOk;
}

int run_vc(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session session;
  const std::string text = read_file(cfg.graph_path);
  DsaGraph graph;
  try {
    graph = parse_graph(session, text);
  } catch (const ParseError& e) {
    err << cfg.graph_path << ":" << e.what() << "\n";
    return kParseError;
  } catch (const GraphError& e) {
    err << cfg.graph_path << ": " << e.what() << "\n";
    return kParseError;
  }
  out << print_term(vc(session, graph, registry_of(cfg))) << "\n";
  return kOk;
}

int run_match(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session session;
  const PruneOptions opts = prune_options(cfg);
  const Term old_vc =
      normalize(session, load_formula(session, cfg.old_path, err), opts.match.registry);
  const Term new_vc =
      normalize(session, load_formula(session, cfg.new_path, err), opts.match.registry);
  out << build_substitution(old_vc, new_vc, opts.match).to_text();
  return kOk;
}

int run_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session session;
  const Term old_vc = load_formula(session, cfg.old_path, err);
  const Term new_vc = load_formula(session, cfg.new_path, err);
  const PruneCheck check =
      check_prune_correct(session, old_vc, new_vc, universe_of(cfg), prune_options(cfg));
  out << "verdict=" << to_string(check.verdict);
  if (check.counterexample) out << " counterexample=" << check.counterexample->to_string();
  out << "\n";
  if (!check.reason.empty()) err << check.reason << "\n";
  if (check.verdict == Verdict::kPass) err << "pruned: " << print_term(check.pruned) << "\n";
  switch (check.verdict) {
    case Verdict::kPass: return kOk;
    case Verdict::kFail: return kCheckFailed;
    case Verdict::kVacuous: return kVacuous;
  }
  return kCheckFailed;
}

int run_fuzz_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  GeneratorParams params;
  params.max_atoms = cfg.max_atoms;
  params.max_depth = cfg.max_depth;
  if (cfg.mode == "int") {
    params.mode = GeneratorMode::kIntegerComparison;
  } else if (cfg.mode != "prop") {
    throw ConfigError("--mode must be 'prop' or 'int'");
  }
  if (params.max_atoms == 0 || params.max_atoms > 10) {
    throw ConfigError("--max-atoms must be between 1 and 10");
  }
  const Universe universe = universe_of(cfg);
  params.literal_lo = universe.lo;
  params.literal_hi = universe.hi;

  const auto cases = run_fuzz(cfg.seed, cfg.count, params, universe, prune_options(cfg));
  std::size_t failures = 0;
  std::size_t vacuous = 0;
  for (const FuzzCase& c : cases) {
    out << format_report_line(c) << "\n";
    failures += c.check.verdict == Verdict::kFail ? 1 : 0;
    vacuous += c.check.verdict == Verdict::kVacuous ? 1 : 0;
  }
  err << "cases=" << cases.size() << " failures=" << failures << " vacuous=" << vacuous
      << "\n";
  return failures == 0 ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Prune verification conditions against a previously proven one"};
  app.name("prunevc");
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  app.add_option("--commutative", cfg.commutative,
                 "extra commutative symbols (and/or are always commutative)")
      ->delimiter(',');
  app.add_option("--w-env", cfg.w_env, "weight of environment similarity")
      ->capture_default_str();
  app.add_option("--w-lcs", cfg.w_lcs, "weight of identifier LCS length")
      ->capture_default_str();

  auto* prune_cmd = app.add_subcommand("prune", "prune NEW against OLD (assumed UNSAT)");
  prune_cmd->add_option("old", cfg.old_path, "old formula file")->required();
  prune_cmd->add_option("new", cfg.new_path, "new formula file")->required();
  prune_cmd->add_flag("--no-match", cfg.no_match, "do not rename old constants");
  prune_cmd->add_option("--emit-substitution", cfg.emit_substitution,
                        "write the constant renaming to this file");

  auto* vc_cmd = app.add_subcommand("vc", "print the verification condition of a DSA graph");
  vc_cmd->add_option("graph", cfg.graph_path, "graph file")->required();

  auto* match_cmd = app.add_subcommand("match", "print the constant renaming OLD -> NEW");
  match_cmd->add_option("old", cfg.old_path, "old formula file")->required();
  match_cmd->add_option("new", cfg.new_path, "new formula file")->required();

  auto* check_cmd =
      app.add_subcommand("check", "verify by enumeration that pruning preserves UNSAT");
  check_cmd->add_option("old", cfg.old_path, "old formula file")->required();
  check_cmd->add_option("new", cfg.new_path, "new formula file")->required();
  check_cmd->add_flag("--no-match", cfg.no_match, "do not rename old constants");
  check_cmd->add_option("--range", cfg.range, "integer range <lo> <hi>")
      ->expected(2)
      ->capture_default_str();
  check_cmd->add_option("--max-assignments", cfg.max_assignments,
                        "refuse universes larger than this")
      ->capture_default_str();

  auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized prune-correctness batch");
  fuzz_cmd->add_option("--seed", cfg.seed, "first seed")->capture_default_str();
  fuzz_cmd->add_option("--count", cfg.count, "number of cases")->capture_default_str();
  fuzz_cmd->add_option("--max-atoms", cfg.max_atoms, "atoms per formula (1..10)")
      ->capture_default_str();
  fuzz_cmd->add_option("--max-depth", cfg.max_depth, "connective depth")
      ->capture_default_str();
  fuzz_cmd->add_option("--mode", cfg.mode, "prop or int")->capture_default_str();
  fuzz_cmd->add_option("--range", cfg.range, "integer range <lo> <hi>")
      ->expected(2)
      ->capture_default_str();
  fuzz_cmd->add_flag("--no-match", cfg.no_match, "do not rename old constants");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (prune_cmd->parsed()) return run_prune(cfg, out, err);
    if (vc_cmd->parsed()) return run_vc(cfg, out, err);
    if (match_cmd->parsed()) return run_match(cfg, out, err);
    if (check_cmd->parsed()) return run_check(cfg, out, err);
    if (fuzz_cmd->parsed()) return run_fuzz_command(cfg, out, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const UniverseTooLarge& e) {
    err << "refused: " << e.what() << "\n";
    return kConfigError;
  } catch (const EvalError& e) {
    err << "cannot evaluate: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace prunevc::cli
