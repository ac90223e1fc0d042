#include "mphase/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <sstream>

namespace mphase {

std::string format_stats(const SolveStats& s) {
  std::ostringstream os;
  os << "decisions=" << s.decisions << '\n'
     << "conflicts=" << s.conflicts << '\n'
     << "propagations=" << s.propagations << '\n'
     << "restarts=" << s.restarts << '\n'
     << "learned=" << s.learned << '\n'
     << "reductions=" << s.reductions << '\n'
     << "ace_probes=" << s.ace_probes << '\n'
     << "probe_propagations=" << s.probe_propagations << '\n'
     << "random_decisions=" << s.random_decisions << '\n'
     << "phase_flips=" << s.phase_flips << '\n'
     << "policy_trace=";
  for (std::size_t i = 0; i < s.policy_trace.size(); ++i)
    os << (i ? "," : "") << s.policy_trace[i];
  os << '\n';
  return os.str();
}

std::vector<std::uint32_t> select_for_removal(
    std::span<const LearnedEntry> entries) {
  std::vector<LearnedEntry> removable;
  for (const LearnedEntry& e : entries) {
    if (e.lbd > 2 && !e.locked) removable.push_back(e);
  }
  std::sort(removable.begin(), removable.end(),
            [](const LearnedEntry& a, const LearnedEntry& b) {
              if (a.lbd != b.lbd) return a.lbd > b.lbd;
              if (a.size != b.size) return a.size > b.size;
              return a.index < b.index;
            });
  std::vector<std::uint32_t> out;
  out.reserve(removable.size() / 2);
  for (std::size_t i = 0; i < removable.size() / 2; ++i)
    out.push_back(removable[i].index);
  return out;
}

std::uint64_t luby(std::uint64_t i) {
  // Find the finite subsequence containing index i and its size.
  std::uint64_t size = 1;
  std::uint64_t seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return std::uint64_t{1} << seq;
}

Solver::Solver(const Formula& formula, std::uint64_t seed, EngineParams params)
    : formula_(&formula),
      params_(params),
      prop_(formula),
      jw_(formula),
      phases_(formula.num_vars()),
      activity_(formula.num_vars(), 0.0),
      heap_(activity_),
      rng_(seed),
      seen_(formula.num_vars(), 0),
      level_stamp_(formula.num_vars() + 1, 0),
      reduce_limit_(params.reduce_start) {
  prop_.set_phase_store(&phases_);
  // Units assigned while loading were not seen by the phase store.
  for (Lit l : prop_.trail().stack) phases_.update(l.var(), !l.negated());
  for (Var v = 0; v < formula.num_vars(); ++v) heap_.insert(v);
}

void Solver::backtrack(std::size_t level) {
  prop_.backtrack(level, [this](Var v) { heap_.insert(v); });
}

void Solver::bump(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  heap_.increased(v);
}

bool Solver::restart_policy() {
  if (conflicts_since_restart_ < luby(restart_index_) * params_.restart_base)
    return false;
  backtrack(0);
  ++stats_.restarts;
  ++restart_index_;
  conflicts_since_restart_ = 0;
  prev_epoch_max_ = epoch_max_level_;
  epoch_max_level_ = 0;
  return true;
}

std::optional<Var> Solver::pick_branch_var(const PhasePolicy& policy,
                                           bool& random) {
  random = false;
  const std::size_t n = prop_.num_vars();
  if (prop_.trail().stack.size() == n) return std::nullopt;

  if (policy.kind == PolicyKind::PrecoSatRandom &&
      bernoulli(rng_, policy.params.p_random_var)) {
    random = true;
    std::uniform_int_distribution<Var> any(0, static_cast<Var>(n - 1));
    for (int tries = 0; tries < 64; ++tries) {
      const Var v = any(rng_);
      if (prop_.value(v) == Value::Unassigned) return v;
    }
    const Var start = any(rng_);
    for (std::size_t k = 0; k < n; ++k) {
      const Var v = static_cast<Var>((start + k) % n);
      if (prop_.value(v) == Value::Unassigned) return v;
    }
  }

  while (!heap_.empty()) {
    const Var v = heap_.pop();
    if (prop_.value(v) == Value::Unassigned) return v;
  }
  return std::nullopt;
}

bool Solver::decide(const PhasePolicy& policy) {
  bool random = false;
  const std::optional<Var> v = pick_branch_var(policy, random);
  if (!v) return false;

  PhaseContext ctx;
  ctx.depth = prop_.decision_level();
  ctx.decision_count = stats_.decisions;
  ctx.max_level_prev_epoch = prev_epoch_max_;
  ctx.rng = &rng_;
  ctx.saved = &phases_;
  const std::uint64_t probes_before = prop_.lookahead_calls();
  const PhaseChoice choice = select_phase(*v, policy, ctx, prop_, jw_);
  const Lit lit(*v, !choice.value);

  prop_.new_level();
  prop_.enqueue(lit, Reason::decision());
  epoch_max_level_ = std::max(epoch_max_level_, prop_.decision_level());
  if (random) ++stats_.random_decisions;
  if (choice.flipped) ++stats_.phase_flips;
  if (observer_) {
    observer_(DecisionEvent{stats_.decisions, ctx.depth, lit, policy.kind,
                            random, choice.flipped,
                            prop_.lookahead_calls() - probes_before});
  }
  ++stats_.decisions;
  return true;
}

void Solver::assume(Lit lit) {
  prop_.new_level();
  prop_.enqueue(lit, Reason::decision());
}

LearnedClause Solver::analyze(Reason conflict) {
  const std::size_t current = prop_.decision_level();
  assert(current > 0);
  const auto& stack = prop_.trail().stack;

  std::vector<Lit> learnt;
  learnt.push_back(Lit());
  int path = 0;
  bool have_p = false;
  Lit p;
  std::size_t idx = stack.size();
  std::span<const Lit> lits = prop_.conflict_lits(conflict, scratch_);

  for (;;) {
    for (std::size_t k = have_p ? 1 : 0; k < lits.size(); ++k) {
      const Lit q = lits[k];
      const Var v = q.var();
      if (seen_[v] || prop_.level(v) == 0) continue;
      bump(v);
      seen_[v] = 1;
      if (prop_.level(v) >= current)
        ++path;
      else
        learnt.push_back(q);
    }
    do {
      --idx;
    } while (!seen_[stack[idx].var()]);
    p = stack[idx];
    have_p = true;
    seen_[p.var()] = 0;
    if (--path == 0) break;
    lits = prop_.reason_lits(p.var(), scratch_);
  }
  learnt[0] = ~p;

  analyze_toclear_.assign(learnt.begin() + 1, learnt.end());
  std::uint32_t abstract = 0;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    abstract |= abstract_level(learnt[i].var());
  std::size_t j = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    const Var v = learnt[i].var();
    if (prop_.reason(v).kind == ReasonKind::Decision ||
        !lit_redundant(learnt[i], abstract))
      learnt[j++] = learnt[i];
  }
  learnt.resize(j);
  for (Lit l : analyze_toclear_) seen_[l.var()] = 0;

  LearnedClause out;
  if (learnt.size() > 1) {
    std::size_t best = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i) {
      if (prop_.level(learnt[i].var()) > prop_.level(learnt[best].var()))
        best = i;
    }
    std::swap(learnt[1], learnt[best]);
    out.backjump_level = prop_.level(learnt[1].var());
  }

  ++stamp_;
  std::uint32_t lbd = 0;
  for (Lit l : learnt) {
    const std::uint32_t lvl = prop_.level(l.var());
    if (level_stamp_[lvl] != stamp_) {
      level_stamp_[lvl] = stamp_;
      ++lbd;
    }
  }
  out.lbd = lbd;
  out.lits = std::move(learnt);
  return out;
}

bool Solver::lit_redundant(Lit p, std::uint32_t abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(p);
  const std::size_t top = analyze_toclear_.size();
  while (!analyze_stack_.empty()) {
    const Lit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const std::span<const Lit> lits = prop_.reason_lits(q.var(), scratch2_);
    for (std::size_t k = 1; k < lits.size(); ++k) {
      const Lit l = lits[k];
      const Var v = l.var();
      if (seen_[v] || prop_.level(v) == 0) continue;
      if (prop_.reason(v).kind != ReasonKind::Decision &&
          (abstract_level(v) & abstract_levels) != 0) {
        seen_[v] = 1;
        analyze_stack_.push_back(l);
        analyze_toclear_.push_back(l);
      } else {
        for (std::size_t i = top; i < analyze_toclear_.size(); ++i)
          seen_[analyze_toclear_[i].var()] = 0;
        analyze_toclear_.resize(top);
        return false;
      }
    }
  }
  return true;
}

void Solver::learn(const LearnedClause& learned) {
  backtrack(learned.backjump_level);
  ++stats_.learned;
  if (learned.lits.size() == 1) {
    prop_.enqueue(learned.lits[0], Reason::decision());
    return;
  }
  const std::uint32_t idx =
      prop_.add_clause(learned.lits, ClauseOrigin::Learned, learned.lbd);
  ++learned_live_;
  prop_.enqueue(learned.lits[0], Reason::clause(idx));
}

void Solver::reduce_learned_db() {
  std::vector<LearnedEntry> entries;
  for (std::uint32_t i = 0; i < prop_.clause_slots(); ++i) {
    const StoredClause& c = prop_.clause(i);
    if (c.deleted || c.lits.empty() || c.origin != ClauseOrigin::Learned)
      continue;
    entries.push_back({i, c.lbd, c.lits.size(), prop_.locked(i)});
  }
  const auto victims = select_for_removal(entries);
  for (std::uint32_t i : victims) prop_.remove_clause(i);
  prop_.purge_deleted();
  learned_live_ -= victims.size();
  reduce_limit_ = static_cast<std::size_t>(
      std::ceil(static_cast<double>(reduce_limit_) * params_.reduce_growth));
  ++stats_.reductions;
}

std::vector<bool> Solver::model() const {
  std::vector<bool> m(prop_.num_vars(), false);
  for (Var v = 0; v < m.size(); ++v) m[v] = prop_.value(v) == Value::True;
  return m;
}

void Solver::sync_stats() {
  stats_.propagations = prop_.propagations();
  stats_.probe_propagations = prop_.probe_propagations();
  stats_.ace_probes = prop_.lookahead_calls();
}

void Solver::activate(const PhasePolicy& policy) {
  stats_.policy_trace.emplace_back(policy_name(policy.kind));
  if (policy.kind == PolicyKind::LocalSearchPhase && !phases_.has_seed()) {
    const auto seed = local_search_seed(*formula_, policy.params.ls_flip_budget,
                                        rng_, policy.params.ls_walk_prob);
    for (Var v = 0; v < seed.size(); ++v) phases_.set_seed(v, seed[v]);
    phases_.mark_seeded();
  }
}

Solver::SearchResult Solver::search(const PhasePolicy& policy,
                                    const Limits& limits,
                                    std::vector<std::uint32_t>* depth_log) {
  std::uint32_t clock_tick = 0;
  for (;;) {
    const PropagationOutcome out = prop_.propagate();
    if (out.conflict) {
      ++stats_.conflicts;
      ++conflicts_since_restart_;
      if (prop_.decision_level() == 0) return SearchResult::Unsat;
      if (depth_log)
        depth_log->push_back(static_cast<std::uint32_t>(prop_.decision_level()));
      learn(analyze(out.conflicting));
      decay();
      if (stats_.conflicts >= limits.conflicts) return SearchResult::Limit;
      continue;
    }
    if (stats_.conflicts >= limits.conflicts ||
        stats_.decisions >= limits.decisions)
      return SearchResult::Limit;
    if (limits.deadline && (++clock_tick & 255) == 0 &&
        std::chrono::steady_clock::now() >= *limits.deadline)
      return SearchResult::Limit;
    if (restart_policy()) continue;
    if (learned_live_ >= reduce_limit_) reduce_learned_db();
    if (!decide(policy)) return SearchResult::Sat;
  }
}

SolverVerdict Solver::solve(const SolvePlan& plan, const Budget& budget) {
  if (!prop_.consistent() || refuted_) return SolverVerdict::unsat();

  Limits base;
  if (budget.max_conflicts)
    base.conflicts = stats_.conflicts + *budget.max_conflicts;
  if (budget.max_decisions)
    base.decisions = stats_.decisions + *budget.max_decisions;
  if (budget.timeout_seconds) {
    base.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(*budget.timeout_seconds));
  }

  auto finish = [this](SearchResult r) {
    SolverVerdict v = SolverVerdict::unknown();
    if (r == SearchResult::Sat) v = SolverVerdict::sat(model());
    if (r == SearchResult::Unsat) {
      v = SolverVerdict::unsat();
      refuted_ = true;
    }
    backtrack(0);
    sync_stats();
    return v;
  };

  if (plan.presolve) {
    activate(plan.presolve->policy);
    Limits pre = base;
    pre.decisions = std::min(base.decisions,
                             stats_.decisions + plan.presolve->decision_budget);
    const SearchResult r = search(plan.presolve->policy, pre, nullptr);
    const bool exhausted = stats_.conflicts >= base.conflicts ||
                           stats_.decisions >= base.decisions;
    if (r != SearchResult::Limit || exhausted) return finish(r);
    backtrack(0);
  }
  activate(plan.main);
  return finish(search(plan.main, base, nullptr));
}

ProbeOutcome Solver::probe(const ProbeBudget& budget) {
  ProbeOutcome out;
  stats_.policy_trace.emplace_back("probe");
  if (!prop_.consistent() || refuted_) {
    out.solved = SolverVerdict::unsat();
    return out;
  }
  Limits limits;
  limits.conflicts = stats_.conflicts + budget.max_conflicts;
  limits.decisions = stats_.decisions + budget.max_decisions;
  const SearchResult r =
      search(PhasePolicy{PolicyKind::PrecoSAT, {}}, limits,
             &out.report.conflict_depths);
  if (r == SearchResult::Sat) out.solved = SolverVerdict::sat(model());
  if (r == SearchResult::Unsat) {
    out.solved = SolverVerdict::unsat();
    refuted_ = true;
  }
  backtrack(0);

  ProbeReport& rep = out.report;
  rep.conflicts_seen = rep.conflict_depths.size();
  if (rep.conflicts_seen > 0) {
    double sum = 0.0;
    for (std::uint32_t d : rep.conflict_depths) sum += d;
    rep.mean_conflict_depth = sum / static_cast<double>(rep.conflicts_seen);
  }
  if (r != SearchResult::Unsat) {
    for (Var v = 0; v < prop_.num_vars(); ++v)
      if (prop_.value(v) == Value::Unassigned) ++rep.unfixed_vars;
  }
  sync_stats();
  return out;
}

std::uint64_t Solver::fingerprint() const {
  std::uint64_t h = prop_.fingerprint();
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (double a : activity_) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof a);
    std::memcpy(&bits, &a, sizeof bits);
    mix(bits);
  }
  for (Var v : heap_.elements()) mix(v);
  for (std::int8_t p : phases_.raw_last()) mix(static_cast<std::uint8_t>(p));
  return h;
}

}  // namespace mphase
