#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "mphase/formula.hpp"
#include "mphase/propagator.hpp"
#include "mphase/saved_phases.hpp"

namespace mphase {

using Rng = std::mt19937_64;

enum class PolicyKind : std::uint8_t {
  JW,
  ACE,
  PrecoSAT,
  PrecoSatTailJW,
  AcePlusPrecoSAT,
  PrecoSatRandom,
  LocalSearchPhase
};

inline constexpr PolicyKind kAllPolicies[] = {
    PolicyKind::JW,             PolicyKind::ACE,
    PolicyKind::PrecoSAT,       PolicyKind::PrecoSatTailJW,
    PolicyKind::AcePlusPrecoSAT, PolicyKind::PrecoSatRandom,
    PolicyKind::LocalSearchPhase};

/// CLI spelling: jw, ace, precosat, precosat-tailjw, ace-precosat,
/// precosat-random, local-search.
std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view name);

struct PhaseParams {
  std::size_t ace_depth_cutoff = 30;
  std::uint64_t ace_decision_cutoff = 300000;
  std::size_t tail_window = 20;
  double p_random_var = 0.02;
  double p_flip = 1.0 / 30.0;
  std::uint64_t ls_flip_budget = 100000;
  double ls_walk_prob = 0.3;

  bool valid() const;
};

struct PhasePolicy {
  PolicyKind kind = PolicyKind::PrecoSAT;
  PhaseParams params;

  friend bool operator==(const PhasePolicy& a, const PhasePolicy& b) {
    return a.kind == b.kind;
  }
};

/// Jeroslow-Wang literal weights over the pre-extraction clause set. A
/// clause of size k contributes 2^-k to each of its literals.
class JwWeights {
 public:
  JwWeights() = default;
  explicit JwWeights(const Formula& f);

  double pos(Var v) const { return pos_[v]; }
  double neg(Var v) const { return neg_[v]; }
  double weight(Lit l) const { return l.negated() ? neg_[l.var()] : pos_[l.var()]; }

  friend bool operator==(const JwWeights&, const JwWeights&) = default;

 private:
  std::vector<double> pos_;
  std::vector<double> neg_;
};

/// Jeroslow-Wang weight of the clauses containing `lit`, computed directly.
double jw_literal_weight(const Formula& f, Lit lit);

/// Positive iff the positive literal weighs strictly more.
inline bool jw_phase(const JwWeights& w, Var v) { return w.pos(v) > w.neg(v); }

/// Weight of a CNF clause reduced to n unassigned literals: 5^(2-n).
double w_cnf(std::uint32_t n);
/// Weight of an XOR constraint reduced to n unassigned variables:
/// 5.5 * 0.85^n.
double w_xor(std::uint32_t n);

struct AceWeight {
  double value = 0.0;
  bool conflicted = false;
};

/// Sums the weights of reduced-but-unsatisfied constraints in a lookahead
/// report. A conflicting probe scores 0.
AceWeight ace_score(const LookaheadReport& report);

/// Lookahead on `v = phase` scored by ace_score. Leaves solver state intact.
AceWeight ace_weight(Propagator& prop, Var v, bool phase);

/// ACE phase when depth < cutoff, JW otherwise. A single conflicting probe
/// selects the opposite phase; two conflicting probes select true; equal
/// scores fall back to JW.
bool ace_phase(Propagator& prop, const JwWeights& jw, Var v, std::size_t depth,
               const PhaseParams& params);

struct PhaseContext {
  std::size_t depth = 0;             // decision level before the decision
  std::uint64_t decision_count = 0;  // decisions made so far
  std::optional<std::size_t> max_level_prev_epoch;
  Rng* rng = nullptr;
  const SavedPhases* saved = nullptr;
};

struct PhaseChoice {
  bool value = false;
  bool flipped = false;
};

/// Saved phase if the variable has one, JW otherwise.
bool precosat_phase(const SavedPhases& saved, const JwWeights& jw, Var v);

/// Dispatches to the heuristic selected by `policy`.
PhaseChoice select_phase(Var v, const PhasePolicy& policy,
                         const PhaseContext& ctx, Propagator& prop,
                         const JwWeights& jw);

/// Bounded WalkSAT-style search over the CNF clauses and XOR constraints of
/// `f`. Returns the assignment with the fewest violated constraints seen.
std::vector<bool> local_search_seed(const Formula& f, std::uint64_t flip_budget,
                                    Rng& rng, double walk_prob = 0.3);

/// Draws true with probability p.
bool bernoulli(Rng& rng, double p);

}  // namespace mphase
