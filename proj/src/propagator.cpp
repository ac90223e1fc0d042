#include "mphase/propagator.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace mphase {

Propagator::Propagator(const Formula& formula)
    : formula_(&formula),
      trail_(formula.num_vars()),
      watches_(2 * formula.num_vars()),
      xors_(formula.xors()),
      xor_watches_(formula.num_vars()) {
  if (formula.trivially_unsat()) consistent_ = false;

  std::vector<Lit> units;
  for (const Clause& c : formula.cnf()) {
    if (c.size() == 1)
      units.push_back(c.lits[0]);
    else
      add_clause(c.lits, ClauseOrigin::Original);
  }
  for (std::uint32_t i = 0; i < xors_.size(); ++i) {
    xor_watches_[xors_[i].vars[0]].push_back(i);
    xor_watches_[xors_[i].vars[1]].push_back(i);
  }
  for (Lit u : units) {
    const Value v = value(u);
    if (v == Value::False) consistent_ = false;
    if (v == Value::Unassigned) enqueue(u, Reason::decision());
  }
  if (consistent_ && propagate().conflict) consistent_ = false;
}

void Propagator::enqueue(Lit lit, Reason reason) {
  const Var v = lit.var();
  assert(trail_.values[v] == Value::Unassigned && "variable already assigned");
  trail_.values[v] = to_value(!lit.negated());
  trail_.levels[v] = static_cast<std::uint32_t>(decision_level());
  trail_.reasons[v] = reason;
  trail_.stack.push_back(lit);
  if (!journaling_ && phases_) phases_->update(v, !lit.negated());
}

PropagationOutcome Propagator::propagate(std::size_t max_steps) {
  PropagationOutcome out;
  const std::size_t start = trail_.stack.size();
  std::size_t steps = 0;
  while (trail_.qhead < trail_.stack.size()) {
    if (steps == max_steps) {
      out.truncated = true;
      break;
    }
    ++steps;
    const Lit p = trail_.stack[trail_.qhead++];
    if (journaling_)
      ++probe_propagations_;
    else
      ++propagations_;
    if (!propagate_clauses(p, out) || !propagate_xors(p.var(), out)) {
      trail_.qhead = trail_.stack.size();
      break;
    }
  }
  out.assigned_count = trail_.stack.size() - start;
  return out;
}

bool Propagator::propagate_clauses(Lit p, PropagationOutcome& out) {
  const Lit false_lit = ~p;
  if (journaling_) {
    journal_.push_back({JournalKind::WatchSnapshot, false_lit.code(),
                        static_cast<std::uint32_t>(watch_snapshots_.size())});
    watch_snapshots_.push_back(watches_[false_lit.code()]);
  }
  auto& ws = watches_[false_lit.code()];
  std::size_t i = 0;
  std::size_t j = 0;
  bool ok = true;
  while (i < ws.size()) {
    const Watcher w = ws[i];
    if (value(w.blocker) == Value::True) {
      ws[j++] = ws[i++];
      continue;
    }
    auto& lits = clauses_[w.clause].lits;
    if (lits[0] == false_lit) swap_clause_lits(w.clause, 0, 1);
    const Lit first = lits[0];
    const Watcher updated{w.clause, first};
    if (first != w.blocker && value(first) == Value::True) {
      ws[j++] = updated;
      ++i;
      continue;
    }

    bool moved = false;
    for (std::uint32_t k = 2; k < lits.size(); ++k) {
      if (value(lits[k]) != Value::False) {
        swap_clause_lits(w.clause, 1, k);
        watches_[lits[1].code()].push_back(updated);
        if (journaling_)
          journal_.push_back({JournalKind::WatchPush, lits[1].code()});
        moved = true;
        break;
      }
    }
    ++i;
    if (moved) continue;

    ws[j++] = updated;
    if (value(first) == Value::False) {
      out.conflict = true;
      out.conflicting = Reason::clause(w.clause);
      while (i < ws.size()) ws[j++] = ws[i++];
      ok = false;
      break;
    }
    enqueue(first, Reason::clause(w.clause));
  }
  ws.resize(j);
  return ok;
}

bool Propagator::propagate_xors(Var x, PropagationOutcome& out) {
  if (journaling_) {
    journal_.push_back({JournalKind::XorWatchSnapshot, x,
                        static_cast<std::uint32_t>(xor_watch_snapshots_.size())});
    xor_watch_snapshots_.push_back(xor_watches_[x]);
  }
  auto& xs = xor_watches_[x];
  std::size_t i = 0;
  std::size_t j = 0;
  bool ok = true;
  while (i < xs.size()) {
    const std::uint32_t idx = xs[i++];
    auto& vars = xors_[idx].vars;
    if (vars[0] == x) swap_xor_vars(idx, 0, 1);

    bool moved = false;
    for (std::uint32_t k = 2; k < vars.size(); ++k) {
      if (value(vars[k]) == Value::Unassigned) {
        swap_xor_vars(idx, 1, k);
        xor_watches_[vars[1]].push_back(idx);
        if (journaling_)
          journal_.push_back({JournalKind::XorWatchPush, vars[1]});
        moved = true;
        break;
      }
    }
    if (moved) continue;

    xs[j++] = idx;
    const Var other = vars[0];
    bool parity = false;
    for (std::size_t k = 1; k < vars.size(); ++k)
      parity ^= value(vars[k]) == Value::True;
    if (value(other) == Value::Unassigned) {
      const bool needed = parity != xors_[idx].odd;
      enqueue(Lit(other, !needed), Reason::xor_constraint(idx));
      continue;
    }
    parity ^= value(other) == Value::True;
    if (parity != xors_[idx].odd) {
      out.conflict = true;
      out.conflicting = Reason::xor_constraint(idx);
      while (i < xs.size()) xs[j++] = xs[i++];
      ok = false;
      break;
    }
  }
  xs.resize(j);
  return ok;
}

void Propagator::swap_clause_lits(std::uint32_t c, std::uint32_t i,
                                  std::uint32_t j) {
  std::swap(clauses_[c].lits[i], clauses_[c].lits[j]);
  if (journaling_) journal_.push_back({JournalKind::ClauseSwap, c, i, j});
}

void Propagator::swap_xor_vars(std::uint32_t x, std::uint32_t i,
                               std::uint32_t j) {
  std::swap(xors_[x].vars[i], xors_[x].vars[j]);
  if (journaling_) journal_.push_back({JournalKind::XorSwap, x, i, j});
}

void Propagator::undo_journal() {
  for (auto it = journal_.rbegin(); it != journal_.rend(); ++it) {
    switch (it->kind) {
      case JournalKind::ClauseSwap:
        std::swap(clauses_[it->target].lits[it->a],
                  clauses_[it->target].lits[it->b]);
        break;
      case JournalKind::XorSwap:
        std::swap(xors_[it->target].vars[it->a], xors_[it->target].vars[it->b]);
        break;
      case JournalKind::WatchPush: {
        auto& list = watches_[it->target];
        if (!list.empty()) list.pop_back();
        break;
      }
      case JournalKind::XorWatchPush: {
        auto& list = xor_watches_[it->target];
        if (!list.empty()) list.pop_back();
        break;
      }
      case JournalKind::WatchSnapshot:
        watches_[it->target] = std::move(watch_snapshots_[it->a]);
        break;
      case JournalKind::XorWatchSnapshot:
        xor_watches_[it->target] = std::move(xor_watch_snapshots_[it->a]);
        break;
    }
  }
  journal_.clear();
  watch_snapshots_.clear();
  xor_watch_snapshots_.clear();
}

LookaheadReport Propagator::lookahead(Var v, bool phase,
                                      std::size_t max_steps) {
  assert(value(v) == Value::Unassigned);
  assert(trail_.qhead == trail_.stack.size());
  ++lookahead_calls_;

  const std::size_t base_level = decision_level();
  journaling_ = true;
  new_level();
  enqueue(Lit(v, !phase), Reason::decision());
  const PropagationOutcome outcome = propagate(max_steps);

  LookaheadReport report;
  report.conflicted = outcome.conflict;
  report.truncated = outcome.truncated;
  for (Lit l : {pos_lit(v), neg_lit(v)}) {
    for (std::uint32_t ci : formula_->occ_cnf(l)) {
      ReducedSize r;
      for (Lit q : formula_->cnf()[ci].lits) {
        const Value val = value(q);
        if (val == Value::True) {
          r = {true, 0};
          break;
        }
        if (val == Value::Unassigned) ++r.size;
      }
      report.reduced_cnf.push_back(r);
    }
  }
  for (std::uint32_t xi : formula_->occ_xor(v)) {
    const XorConstraint& x = formula_->xors()[xi];
    ReducedSize r;
    bool parity = false;
    for (Var u : x.vars) {
      const Value val = value(u);
      if (val == Value::Unassigned)
        ++r.size;
      else
        parity ^= val == Value::True;
    }
    if (r.size == 0 && parity == x.odd) r.satisfied = true;
    report.reduced_xor.push_back(r);
  }

  backtrack(base_level);
  undo_journal();
  journaling_ = false;
  return report;
}

std::uint32_t Propagator::add_clause(std::vector<Lit> lits,
                                     ClauseOrigin origin, std::uint32_t lbd) {
  assert(lits.size() >= 2);
  std::uint32_t index;
  if (!free_slots_.empty()) {
    index = free_slots_.back();
    free_slots_.pop_back();
    clauses_[index] = StoredClause{std::move(lits), origin, lbd, false};
  } else {
    index = static_cast<std::uint32_t>(clauses_.size());
    clauses_.push_back(StoredClause{std::move(lits), origin, lbd, false});
  }
  const auto& c = clauses_[index].lits;
  watches_[c[0].code()].push_back({index, c[1]});
  watches_[c[1].code()].push_back({index, c[0]});
  return index;
}

void Propagator::remove_clause(std::uint32_t index) {
  assert(!locked(index));
  clauses_[index].deleted = true;
}

void Propagator::purge_deleted() {
  for (auto& ws : watches_) {
    std::erase_if(ws, [&](const Watcher& w) { return clauses_[w.clause].deleted; });
  }
  for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
    auto& c = clauses_[i];
    if (c.deleted && !c.lits.empty()) {
      c.lits.clear();
      c.lits.shrink_to_fit();
      free_slots_.push_back(i);
    }
  }
}

bool Propagator::locked(std::uint32_t index) const {
  const auto& c = clauses_[index];
  if (c.deleted || c.lits.empty()) return false;
  const Var v = c.lits[0].var();
  return value(c.lits[0]) == Value::True &&
         trail_.reasons[v] == Reason::clause(index);
}

std::span<const Lit> Propagator::reason_lits(Var v,
                                             std::vector<Lit>& scratch) const {
  const Reason r = trail_.reasons[v];
  if (r.kind == ReasonKind::Clause) return clauses_[r.index].lits;
  scratch.clear();
  if (r.kind == ReasonKind::Decision) return scratch;
  scratch.push_back(Lit(v, value(v) == Value::False));
  for (Var u : xors_[r.index].vars) {
    if (u != v) scratch.push_back(Lit(u, value(u) == Value::True));
  }
  return scratch;
}

std::span<const Lit> Propagator::conflict_lits(Reason conflict,
                                               std::vector<Lit>& scratch) const {
  if (conflict.kind == ReasonKind::Clause) return clauses_[conflict.index].lits;
  scratch.clear();
  for (Var u : xors_[conflict.index].vars)
    scratch.push_back(Lit(u, value(u) == Value::True));
  return scratch;
}

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
};

}  // namespace

std::uint64_t Propagator::fingerprint() const {
  Fnv f;
  f.add(trail_.stack.size());
  for (Lit l : trail_.stack) {
    f.add(l.code());
    f.add(trail_.levels[l.var()]);
    f.add(static_cast<std::uint64_t>(trail_.reasons[l.var()].kind) << 32 |
          trail_.reasons[l.var()].index);
  }
  for (std::size_t m : trail_.level_marks) f.add(m);
  f.add(trail_.qhead);
  for (Value v : trail_.values) f.add(static_cast<std::uint64_t>(v));
  for (const auto& ws : watches_) {
    f.add(ws.size());
    for (const Watcher& w : ws) f.add(std::uint64_t{w.clause} << 32 | w.blocker.code());
  }
  for (const auto& xs : xor_watches_) {
    f.add(xs.size());
    for (std::uint32_t x : xs) f.add(x);
  }
  for (const auto& c : clauses_) {
    f.add(c.deleted);
    for (Lit l : c.lits) f.add(l.code());
  }
  for (const auto& x : xors_) {
    for (Var v : x.vars) f.add(v);
  }
  return f.h;
}

bool Propagator::watches_consistent() const {
  std::vector<int> count(clauses_.size(), 0);
  for (std::uint32_t code = 0; code < watches_.size(); ++code) {
    for (const Watcher& w : watches_[code]) {
      const auto& c = clauses_[w.clause];
      if (c.deleted) continue;
      if (c.lits[0].code() != code && c.lits[1].code() != code) return false;
      ++count[w.clause];
    }
  }
  for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
    const auto& c = clauses_[i];
    if (c.deleted || c.lits.empty()) continue;
    if (count[i] != 2) return false;
    // At fixpoint, an unsatisfied clause never has a false watch while an
    // unwatched literal is still non-false.
    const bool sat = std::any_of(c.lits.begin(), c.lits.end(),
                                 [&](Lit l) { return value(l) == Value::True; });
    if (sat) continue;
    if (value(c.lits[0]) == Value::False || value(c.lits[1]) == Value::False)
      return false;
  }
  return true;
}

}  // namespace mphase
