#include "mphase/pipeline.hpp"

namespace mphase {

Classification classify_formula(const Formula& extracted, Solver& solver,
                                const RunOptions& options) {
  Classification out;
  ProbeOutcome probe = solver.probe(options.probe_budget);
  out.solved_by_probe = std::move(probe.solved);
  out.features = extract_features(extracted, probe.report);
  out.plan = classify(out.features, options.order);
  out.plan.main.params = options.params;
  if (out.plan.presolve) out.plan.presolve->policy.params = options.params;
  return out;
}

RunResult run_solver(const Formula& parsed, const RunOptions& options) {
  const Formula f = detect_xor(parsed);
  Solver solver(f, options.seed);
  RunResult result;

  if (options.heuristic) {
    SolvePlan plan = SolvePlan::single(PhasePolicy{*options.heuristic, options.params});
    result.verdict = solver.solve(plan, options.budget);
    result.plan = std::move(plan);
  } else {
    Classification cls = classify_formula(f, solver, options);
    result.features = cls.features;
    if (cls.solved_by_probe) {
      result.verdict = std::move(*cls.solved_by_probe);
    } else {
      result.verdict = solver.solve(cls.plan, options.budget);
      result.plan = std::move(cls.plan);
    }
  }
  result.stats = solver.stats();
  if (result.verdict.is_sat())
    result.model_valid = result.verdict.model && check_model(f, *result.verdict.model);
  return result;
}

}  // namespace mphase
