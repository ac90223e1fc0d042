#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mphase/phase.hpp"

namespace mphase {

struct Presolve {
  PhasePolicy policy;
  std::uint64_t decision_budget = 0;

  friend bool operator==(const Presolve&, const Presolve&) = default;
};

/// Classifier output: an optional budgeted pre-solve, the main policy, and
/// the identifiers of the rules that produced them.
struct SolvePlan {
  std::optional<Presolve> presolve;
  PhasePolicy main;
  std::vector<std::string> trace;

  /// A plan that runs `policy` alone.
  static SolvePlan single(PhasePolicy policy) {
    return SolvePlan{std::nullopt, policy, {"explicit"}};
  }

  friend bool operator==(const SolvePlan&, const SolvePlan&) = default;
};

}  // namespace mphase
