#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mphase/pipeline.hpp"

namespace mphase {

struct BenchRow {
  std::string instance;
  std::string policy;
  std::string verdict;  // sat, unsat, unknown, error
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t ms = 0;
};

struct BenchConfig {
  std::vector<std::string> inputs;  // files; directories expand to *.cnf
  /// Policies to run; nullopt entries mean classifier-selected.
  std::vector<std::optional<PolicyKind>> policies;
  RunOptions options;  // heuristic field ignored
  std::size_t jobs = 1;
  bool timing = true;  // false reports ms=0 for reproducible output
};

struct BenchResult {
  std::vector<BenchRow> rows;  // (instance, policy) order
  /// Instances decided Sat by one policy and Unsat by another, or with an
  /// invalid model.
  std::vector<std::string> soundness_failures;
};

/// Expands directories into their sorted *.cnf entries.
std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs);

BenchResult run_bench(const BenchConfig& config);

/// True if the rows of one instance contain both a sat and an unsat verdict.
bool verdicts_conflict(std::span<const BenchRow> rows);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace mphase
