// mphasesat: CDCL solver with selectable phase heuristics.
//
//   mphasesat solve FILE [--heuristic auto|jw|ace|...] [--stats]
//   mphasesat features FILE
//   mphasesat bench FILE|DIR... [--policies jw,ace] [--jobs N]
//   mphasesat gen parity-chain|pigeonhole|random-ksat [--n N] ...

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mphase/bench.hpp"
#include "mphase/dimacs.hpp"
#include "mphase/features.hpp"
#include "mphase/generators.hpp"
#include "mphase/pipeline.hpp"

namespace {

using namespace mphase;

struct CommonFlags {
  std::string heuristic = "auto";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_conflicts;
  std::optional<std::uint64_t> max_decisions;
  std::optional<double> timeout;
  std::string order = "priority";
  PhaseParams params;
};

void add_budget_flags(CLI::App* app, CommonFlags& f) {
  app->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  app->add_option("--max-conflicts", f.max_conflicts, "Conflict budget");
  app->add_option("--max-decisions", f.max_decisions, "Decision budget");
  app->add_option("--timeout", f.timeout, "Wall-clock budget in seconds");
  app->add_option("--classifier-order", f.order,
                  "Rule evaluation order for auto mode")
      ->check(CLI::IsMember({"priority", "listed"}))
      ->capture_default_str();
  app->add_option("--ace-depth-cutoff", f.params.ace_depth_cutoff)
      ->capture_default_str();
  app->add_option("--ace-decision-cutoff", f.params.ace_decision_cutoff)
      ->capture_default_str();
  app->add_option("--tail-window", f.params.tail_window)->capture_default_str();
  app->add_option("--p-random-var", f.params.p_random_var)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app->add_option("--p-flip", f.params.p_flip)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app->add_option("--ls-flip-budget", f.params.ls_flip_budget)
      ->capture_default_str();
}

RunOptions to_options(const CommonFlags& f) {
  RunOptions o;
  if (f.heuristic != "auto") o.heuristic = parse_policy(f.heuristic);
  o.seed = f.seed;
  o.budget.max_conflicts = f.max_conflicts;
  o.budget.max_decisions = f.max_decisions;
  o.budget.timeout_seconds = f.timeout;
  o.params = f.params;
  o.order = f.order == "listed" ? RuleOrder::Listed : RuleOrder::Priority;
  return o;
}

std::vector<std::string> heuristic_names() {
  std::vector<std::string> names{"auto"};
  for (PolicyKind k : kAllPolicies) names.emplace_back(policy_name(k));
  return names;
}

std::optional<Formula> load(const std::string& path) {
  ParseResult r = read_dimacs_file(path);
  if (!r) {
    std::cerr << path << ':' << r.diagnostic().to_string() << '\n';
    return std::nullopt;
  }
  for (const std::string& w : r.formula().warnings)
    std::cerr << path << ": warning: " << w << '\n';
  return std::move(r).formula();
}

void print_comment_block(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) std::cout << "c " << line << '\n';
}

int cmd_solve(const std::string& path, const CommonFlags& flags, bool stats) {
  const auto formula = load(path);
  if (!formula) return 1;
  const RunResult run = run_solver(*formula, to_options(flags));
  std::cout << emit_verdict(run.verdict);
  if (stats) {
    print_comment_block(format_stats(run.stats));
    if (run.features) {
      const SolvePlan plan = run.plan ? *run.plan : SolvePlan{};
      std::string block = format_features(*run.features, plan);
      if (!run.plan) block += "plan.solved_by_probe=1\n";
      print_comment_block(block);
    }
  }
  if (!run.model_valid) {
    std::cerr << "internal error: model does not satisfy the formula\n";
    return 3;
  }
  return exit_code(run.verdict);
}

int cmd_features(const std::string& path, const CommonFlags& flags) {
  const auto formula = load(path);
  if (!formula) return 1;
  const Formula f = detect_xor(*formula);
  Solver solver(f, flags.seed);
  const Classification cls = classify_formula(f, solver, to_options(flags));
  std::cout << format_features(cls.features, cls.plan);
  return 0;
}

std::vector<std::optional<PolicyKind>> parse_policy_list(const std::string& list) {
  std::vector<std::optional<PolicyKind>> out;
  std::istringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name == "auto") {
      out.emplace_back(std::nullopt);
    } else if (auto k = parse_policy(name)) {
      out.emplace_back(*k);
    } else {
      throw CLI::ValidationError("--policies", "unknown policy '" + name + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CDCL SAT solver with lookahead-based phase selection"};
  app.require_subcommand(1);

  std::string input;
  CommonFlags flags;
  bool stats = false;

  auto* solve = app.add_subcommand("solve", "Solve a DIMACS CNF file");
  solve->add_option("file", input, "Input file")->required();
  solve->add_option("--heuristic", flags.heuristic, "Phase heuristic")
      ->check(CLI::IsMember(heuristic_names()))
      ->capture_default_str();
  solve->add_flag("--stats", stats, "Append statistics as comment lines");
  add_budget_flags(solve, flags);

  auto* features = app.add_subcommand("features", "Print instance features and plan");
  features->add_option("file", input, "Input file")->required();
  add_budget_flags(features, flags);

  std::vector<std::string> bench_inputs;
  std::string policies = "jw,ace,precosat,precosat-tailjw,ace-precosat,precosat-random,local-search";
  std::size_t jobs = 1;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "Run every policy on every instance, CSV out");
  bench->add_option("inputs", bench_inputs, "Files or directories")->required();
  bench->add_option("--policies", policies, "Comma-separated policies")
      ->capture_default_str();
  bench->add_option("--jobs,-j", jobs, "Parallel cells")->capture_default_str();
  bench->add_flag("--no-timing", no_timing, "Report ms=0 for reproducible output");
  add_budget_flags(bench, flags);

  std::string family;
  std::size_t n = 10;
  std::size_t k = 3;
  double ratio = 4.26;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark instance");
  gen->add_option("family", family, "parity-chain | pigeonhole | random-ksat")
      ->required()
      ->check(CLI::IsMember({"parity-chain", "pigeonhole", "random-ksat"}));
  gen->add_option("--n", n, "Variables (holes for pigeonhole)")->capture_default_str();
  gen->add_option("--k", k, "Clause width for random-ksat")->capture_default_str();
  gen->add_option("--ratio", ratio, "Clause/variable ratio for random-ksat")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(input, flags, stats);
    if (*features) return cmd_features(input, flags);
    if (*bench) {
      BenchConfig cfg;
      cfg.inputs = bench_inputs;
      cfg.policies = parse_policy_list(policies);
      cfg.options = to_options(flags);
      cfg.jobs = jobs;
      cfg.timing = !no_timing;
      const BenchResult result = run_bench(cfg);
      std::cout << bench_csv(result.rows);
      for (const std::string& f : result.soundness_failures)
        std::cerr << "soundness failure: conflicting verdicts or invalid model on " << f
                  << '\n';
      return result.soundness_failures.empty() ? 0 : 2;
    }
    if (*gen) {
      if (family == "parity-chain")
        std::cout << gen_parity_chain(n, gen_seed);
      else if (family == "pigeonhole")
        std::cout << gen_pigeonhole(n);
      else
        std::cout << gen_random_ksat(n, k, ratio, gen_seed);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
