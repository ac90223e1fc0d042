#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "mphase/formula.hpp"
#include "mphase/literal.hpp"
#include "mphase/saved_phases.hpp"

namespace mphase {

enum class ReasonKind : std::uint8_t { Decision, Clause, Xor };

/// Why a literal is on the trail. Also used to name a conflicting
/// constraint.
struct Reason {
  ReasonKind kind = ReasonKind::Decision;
  std::uint32_t index = 0;

  static constexpr Reason decision() { return {}; }
  static constexpr Reason clause(std::uint32_t i) {
    return {ReasonKind::Clause, i};
  }
  static constexpr Reason xor_constraint(std::uint32_t i) {
    return {ReasonKind::Xor, i};
  }
  friend constexpr bool operator==(Reason, Reason) = default;
};

/// Assignment stack with decision levels and implication reasons.
struct Trail {
  std::vector<Lit> stack;
  std::vector<std::size_t> level_marks;  // stack position where level i+1 starts
  std::vector<Value> values;             // per variable
  std::vector<std::uint32_t> levels;     // per variable, valid when assigned
  std::vector<Reason> reasons;           // per variable, valid when assigned
  std::size_t qhead = 0;

  explicit Trail(std::size_t num_vars = 0)
      : values(num_vars, Value::Unassigned),
        levels(num_vars, 0),
        reasons(num_vars) {}

  std::size_t decision_level() const { return level_marks.size(); }

  Value value(Var v) const { return values[v]; }
  Value value(Lit l) const {
    const Value v = values[l.var()];
    if (v == Value::Unassigned) return v;
    return to_value((v == Value::True) != l.negated());
  }
};

struct PropagationOutcome {
  bool conflict = false;
  Reason conflicting;             // valid when conflict
  std::size_t assigned_count = 0; // literals enqueued during the call
  bool truncated = false;         // stopped by a step cap
};

/// Reduced state of one constraint containing the probed variable.
struct ReducedSize {
  bool satisfied = false;
  std::uint32_t size = 0;  // unassigned literals/variables; 0 if satisfied
  friend bool operator==(const ReducedSize&, const ReducedSize&) = default;
};

struct LookaheadReport {
  bool conflicted = false;
  bool truncated = false;
  std::vector<ReducedSize> reduced_cnf;  // one per cnf occurrence of the var
  std::vector<ReducedSize> reduced_xor;  // one per xor occurrence of the var
};

/// A clause in the propagation database.
struct StoredClause {
  std::vector<Lit> lits;  // lits[0], lits[1] are watched
  ClauseOrigin origin = ClauseOrigin::Original;
  std::uint32_t lbd = 0;
  bool deleted = false;
};

/// Watched-literal propagation over CNF clauses and XOR constraints.
///
/// Owns the trail and the clause database. Original clauses of the formula
/// are attached on construction and unit clauses enqueued at level 0.
/// Lookahead probes journal every structural change so the state after a
/// probe is bit-identical to the state before it.
class Propagator {
 public:
  static constexpr std::size_t kUnlimited =
      std::numeric_limits<std::size_t>::max();

  explicit Propagator(const Formula& formula);

  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  const Formula& formula() const { return *formula_; }
  std::size_t num_vars() const { return trail_.values.size(); }
  const Trail& trail() const { return trail_; }

  /// False if the formula was refuted while loading (conflicting units or
  /// the trivially-unsat marker).
  bool consistent() const { return consistent_; }

  Value value(Lit l) const { return trail_.value(l); }
  Value value(Var v) const { return trail_.value(v); }
  std::uint32_t level(Var v) const { return trail_.levels[v]; }
  Reason reason(Var v) const { return trail_.reasons[v]; }
  std::size_t decision_level() const { return trail_.decision_level(); }

  void new_level() { trail_.level_marks.push_back(trail_.stack.size()); }

  /// Pushes `lit` at the current level. The variable must be unassigned.
  void enqueue(Lit lit, Reason reason);

  /// Unit propagation to fixpoint, or until the first conflict.
  PropagationOutcome propagate(std::size_t max_steps = kUnlimited);

  /// Undoes every level above `level`; `on_unassign(var)` runs for each
  /// variable removed from the trail.
  template <typename F>
  void backtrack(std::size_t level, F&& on_unassign);
  void backtrack(std::size_t level) {
    backtrack(level, [](Var) {});
  }

  /// Assigns `v = phase` on a fresh level, propagates, records the reduced
  /// sizes of every formula constraint containing `v`, then restores the
  /// exact prior state.
  LookaheadReport lookahead(Var v, bool phase,
                            std::size_t max_steps = kUnlimited);

  /// Adds and attaches a clause of size >= 2. lits[0] and lits[1] become the
  /// watches, so for learned clauses lits[0] must be the asserting literal
  /// and lits[1] a literal of the highest remaining level.
  std::uint32_t add_clause(std::vector<Lit> lits, ClauseOrigin origin,
                           std::uint32_t lbd = 0);

  /// Marks a clause deleted. Watches are dropped by purge_deleted().
  void remove_clause(std::uint32_t index);
  void purge_deleted();

  const StoredClause& clause(std::uint32_t index) const {
    return clauses_[index];
  }
  std::size_t clause_slots() const { return clauses_.size(); }
  const std::vector<XorConstraint>& xors() const { return xors_; }

  /// True iff the clause is the reason of its first literal's assignment.
  bool locked(std::uint32_t index) const;

  /// Literals of the reason for `v` as a clause: element 0 is the true
  /// literal of `v`, the rest are false under the current trail.
  std::span<const Lit> reason_lits(Var v, std::vector<Lit>& scratch) const;

  /// A clause that is falsified under the current trail.
  std::span<const Lit> conflict_lits(Reason conflict,
                                     std::vector<Lit>& scratch) const;

  void set_phase_store(SavedPhases* store) { phases_ = store; }

  std::uint64_t propagations() const { return propagations_; }
  std::uint64_t probe_propagations() const { return probe_propagations_; }
  std::uint64_t lookahead_calls() const { return lookahead_calls_; }

  /// Hash over the trail, assignment, watch lists and constraint literal
  /// orders.
  std::uint64_t fingerprint() const;

  /// Checks the two-watch invariant on every live clause (test support).
  bool watches_consistent() const;

 private:
  struct Watcher {
    std::uint32_t clause;
    Lit blocker;
  };

  enum class JournalKind : std::uint8_t {
    ClauseSwap,
    XorSwap,
    WatchPush,
    XorWatchPush,
    WatchSnapshot,
    XorWatchSnapshot
  };
  struct JournalEntry {
    JournalKind kind;
    std::uint32_t target;  // clause / xor / literal code / variable
    std::uint32_t a = 0;   // swap position or snapshot slot
    std::uint32_t b = 0;
  };

  bool propagate_clauses(Lit p, PropagationOutcome& out);
  bool propagate_xors(Var x, PropagationOutcome& out);
  void swap_clause_lits(std::uint32_t c, std::uint32_t i, std::uint32_t j);
  void swap_xor_vars(std::uint32_t x, std::uint32_t i, std::uint32_t j);
  void undo_journal();

  const Formula* formula_;
  Trail trail_;
  std::vector<StoredClause> clauses_;
  std::vector<std::uint32_t> free_slots_;
  std::vector<std::vector<Watcher>> watches_;  // by literal code: clauses watching it
  std::vector<XorConstraint> xors_;            // vars[0], vars[1] watched
  std::vector<std::vector<std::uint32_t>> xor_watches_;  // by variable
  SavedPhases* phases_ = nullptr;
  bool consistent_ = true;

  bool journaling_ = false;
  std::vector<JournalEntry> journal_;
  std::vector<std::vector<Watcher>> watch_snapshots_;
  std::vector<std::vector<std::uint32_t>> xor_watch_snapshots_;

  std::uint64_t propagations_ = 0;
  std::uint64_t probe_propagations_ = 0;
  std::uint64_t lookahead_calls_ = 0;
};

template <typename F>
void Propagator::backtrack(std::size_t level, F&& on_unassign) {
  if (decision_level() <= level) return;
  const std::size_t keep = trail_.level_marks[level];
  for (std::size_t i = trail_.stack.size(); i-- > keep;) {
    const Var v = trail_.stack[i].var();
    trail_.values[v] = Value::Unassigned;
    on_unassign(v);
  }
  trail_.stack.resize(keep);
  trail_.level_marks.resize(level);
  trail_.qhead = keep;
}

}  // namespace mphase
