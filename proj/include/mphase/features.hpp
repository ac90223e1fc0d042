#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "mphase/formula.hpp"
#include "mphase/plan.hpp"
#include "mphase/solver.hpp"

namespace mphase {

/// The eight instance features the classifier reads.
struct FeatureVector {
  std::size_t c = 0;       // clauses, pre-extraction
  std::size_t v = 0;       // variables
  double ratio = 0.0;      // c / v, 0 when v == 0
  /// Mean decision level at conflict during probing; absent when probing
  /// saw no conflict.
  std::optional<double> mean_conflict_depth;
  std::size_t unfixed = 0; // unassigned at level 0 after probing
  std::size_t bin = 0;     // binary clauses, pre-extraction
  std::size_t xor_count = 0;
  std::size_t large = 0;   // clauses of size >= 9, pre-extraction

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

FeatureVector extract_features(const Formula& f, const ProbeReport& report);

enum class RuleOrder {
  Priority,  // tail-JW rules, then ACE rules, then PrecoSAT rules
  Listed     // PrecoSAT rules, then ACE rules, then tail-JW rules
};

inline constexpr std::uint64_t kPresolveDecisions = 200000;

/// Maps a feature vector to a solve plan. Pure.
SolvePlan classify(const FeatureVector& f, RuleOrder order = RuleOrder::Priority);

/// One `name=value` line per feature and plan field.
std::string format_features(const FeatureVector& f, const SolvePlan& plan);

}  // namespace mphase
