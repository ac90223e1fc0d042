#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mphase/dimacs.hpp"
#include "mphase/formula.hpp"
#include "mphase/heap.hpp"
#include "mphase/phase.hpp"
#include "mphase/plan.hpp"
#include "mphase/propagator.hpp"

namespace mphase {

struct Budget {
  std::optional<std::uint64_t> max_conflicts;
  std::optional<std::uint64_t> max_decisions;
  std::optional<double> timeout_seconds;
};

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learned = 0;  // clauses learned, units included
  std::uint64_t reductions = 0;
  std::uint64_t ace_probes = 0;
  std::uint64_t probe_propagations = 0;
  std::uint64_t random_decisions = 0;
  std::uint64_t phase_flips = 0;
  std::vector<std::string> policy_trace;
};

/// `key=value` lines in a fixed order.
std::string format_stats(const SolveStats& stats);

/// Reported for every decision when an observer is installed.
struct DecisionEvent {
  std::uint64_t index = 0;  // 0-based decision number
  std::size_t depth = 0;    // decision level before the decision
  Lit lit;
  PolicyKind policy = PolicyKind::PrecoSAT;
  bool random_var = false;
  bool flipped = false;
  std::uint64_t ace_probes = 0;  // lookaheads spent choosing this phase
};

struct ProbeBudget {
  std::uint64_t max_conflicts = 2000;
  std::uint64_t max_decisions = 100000;
};

struct ProbeReport {
  double mean_conflict_depth = 0.0;
  std::size_t unfixed_vars = 0;
  std::uint64_t conflicts_seen = 0;
  std::vector<std::uint32_t> conflict_depths;
};

struct ProbeOutcome {
  ProbeReport report;
  std::optional<SolverVerdict> solved;  // set when probing decided the formula
};

struct LearnedClause {
  std::vector<Lit> lits;  // lits[0] asserting, lits[1] at backjump level
  std::size_t backjump_level = 0;
  std::uint32_t lbd = 0;
};

/// Input for choosing which learned clauses to delete.
struct LearnedEntry {
  std::uint32_t index;
  std::uint32_t lbd;
  std::size_t size;
  bool locked;
};

/// Glue clauses (lbd <= 2) and locked clauses survive. Of the rest, the
/// worse half by (lbd desc, size desc) is returned for deletion.
std::vector<std::uint32_t> select_for_removal(std::span<const LearnedEntry> entries);

/// Luby sequence 1,1,2,1,1,2,4,... (0-based).
std::uint64_t luby(std::uint64_t i);

struct EngineParams {
  double var_decay = 0.95;
  std::uint64_t restart_base = 64;
  std::size_t reduce_start = 4000;
  double reduce_growth = 1.1;
};

/// CDCL search: VSIDS decisions, first-UIP learning with recursive
/// minimization, glue-based database reduction, Luby restarts, and a
/// pluggable phase policy.
class Solver {
 public:
  explicit Solver(const Formula& formula, std::uint64_t seed = 0,
                  EngineParams params = {});

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  /// Runs plan.presolve under its decision budget, then plan.main. The
  /// budget covers the whole call.
  SolverVerdict solve(const SolvePlan& plan, const Budget& budget = {});
  SolverVerdict solve(const PhasePolicy& policy, const Budget& budget = {}) {
    return solve(SolvePlan::single(policy), budget);
  }

  /// Bounded search under the PrecoSAT policy that measures conflict depth
  /// and root-level fixed variables. Learned clauses are kept.
  ProbeOutcome probe(const ProbeBudget& budget = {});

  const SolveStats& stats() const { return stats_; }
  const Propagator& propagator() const { return prop_; }
  Propagator& propagator() { return prop_; }
  const JwWeights& jw() const { return jw_; }
  const SavedPhases& saved_phases() const { return phases_; }
  const std::vector<double>& activity() const { return activity_; }
  std::optional<std::size_t> max_level_prev_epoch() const { return prev_epoch_max_; }

  void set_decision_observer(std::function<void(const DecisionEvent&)> f) {
    observer_ = std::move(f);
  }

  /// Runs a restart if the Luby schedule says so.
  bool restart_policy();

  /// Decision step under `policy`: picks a variable and phase and pushes it
  /// on a new level. Returns false if every variable is assigned.
  bool decide(const PhasePolicy& policy);

  /// Pushes `lit` as a decision on a new level.
  void assume(Lit lit);

  PropagationOutcome propagate() { return prop_.propagate(); }

  /// First-UIP analysis of a conflict at level >= 1. Bumps activities.
  LearnedClause analyze(Reason conflict);

  /// Backjumps and installs `learned`, asserting its first literal.
  void learn(const LearnedClause& learned);

  /// Deletes learned clauses per select_for_removal.
  void reduce_learned_db();
  std::size_t learned_count() const { return learned_live_; }
  std::size_t reduce_threshold() const { return reduce_limit_; }

  void backtrack(std::size_t level);

  /// Hash over propagator state, activities, heap, and saved phases.
  std::uint64_t fingerprint() const;

 private:
  enum class SearchResult { Sat, Unsat, Limit };

  struct Limits {
    std::uint64_t conflicts = ~std::uint64_t{0};
    std::uint64_t decisions = ~std::uint64_t{0};
    std::optional<std::chrono::steady_clock::time_point> deadline;
  };

  SearchResult search(const PhasePolicy& policy, const Limits& limits,
                      std::vector<std::uint32_t>* depth_log);
  void activate(const PhasePolicy& policy);
  std::optional<Var> pick_branch_var(const PhasePolicy& policy, bool& random);
  void bump(Var v);
  void decay() { var_inc_ /= params_.var_decay; }
  bool lit_redundant(Lit p, std::uint32_t abstract_levels);
  std::uint32_t abstract_level(Var v) const {
    return 1u << (prop_.level(v) & 31);
  }
  std::vector<bool> model() const;
  void sync_stats();

  const Formula* formula_;
  EngineParams params_;
  Propagator prop_;
  JwWeights jw_;
  SavedPhases phases_;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  VarHeap heap_;
  Rng rng_;

  std::vector<char> seen_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_toclear_;
  std::vector<Lit> scratch_;
  std::vector<Lit> scratch2_;
  std::vector<std::uint64_t> level_stamp_;
  std::uint64_t stamp_ = 0;

  std::size_t learned_live_ = 0;
  std::size_t reduce_limit_;
  std::uint64_t restart_index_ = 0;
  std::uint64_t conflicts_since_restart_ = 0;
  std::size_t epoch_max_level_ = 0;
  std::optional<std::size_t> prev_epoch_max_;
  bool refuted_ = false;

  SolveStats stats_;
  std::function<void(const DecisionEvent&)> observer_;
};

}  // namespace mphase
