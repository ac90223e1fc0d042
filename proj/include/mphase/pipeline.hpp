#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mphase/dimacs.hpp"
#include "mphase/features.hpp"
#include "mphase/formula.hpp"
#include "mphase/phase.hpp"
#include "mphase/solver.hpp"

namespace mphase {

struct RunOptions {
  std::optional<PolicyKind> heuristic;  // nullopt selects via the classifier
  std::uint64_t seed = 0;
  Budget budget;
  PhaseParams params;
  RuleOrder order = RuleOrder::Priority;
  ProbeBudget probe_budget;
};

struct RunResult {
  SolverVerdict verdict;
  SolveStats stats;
  std::optional<FeatureVector> features;
  std::optional<SolvePlan> plan;  // nullopt when probing decided the formula
  bool model_valid = true;        // Sat model checked against the formula
};

/// Probes, extracts features and classifies a parsed formula after XOR
/// detection. Returns the plan with `params` applied to every policy.
struct Classification {
  FeatureVector features;
  SolvePlan plan;
  std::optional<SolverVerdict> solved_by_probe;
};
Classification classify_formula(const Formula& extracted, Solver& solver,
                                const RunOptions& options);

/// Full solve pipeline: detect_xor, optional probe and classification, then
/// the solve itself.
RunResult run_solver(const Formula& parsed, const RunOptions& options);

}  // namespace mphase
