#include "mphase/phase.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace mphase {

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::JW:
      return "jw";
    case PolicyKind::ACE:
      return "ace";
    case PolicyKind::PrecoSAT:
      return "precosat";
    case PolicyKind::PrecoSatTailJW:
      return "precosat-tailjw";
    case PolicyKind::AcePlusPrecoSAT:
      return "ace-precosat";
    case PolicyKind::PrecoSatRandom:
      return "precosat-random";
    case PolicyKind::LocalSearchPhase:
      return "local-search";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (PolicyKind k : kAllPolicies) {
    if (policy_name(k) == name) return k;
  }
  return std::nullopt;
}

bool PhaseParams::valid() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  return prob(p_random_var) && prob(p_flip) && prob(ls_walk_prob) &&
         ace_depth_cutoff > 0 && ace_decision_cutoff > 0;
}

JwWeights::JwWeights(const Formula& f)
    : pos_(f.num_vars(), 0.0), neg_(f.num_vars(), 0.0) {
  for (const Clause& c : f.original()) {
    const double w = std::ldexp(1.0, -static_cast<int>(c.size()));
    for (Lit l : c.lits) (l.negated() ? neg_ : pos_)[l.var()] += w;
  }
}

double jw_literal_weight(const Formula& f, Lit lit) {
  double sum = 0.0;
  for (const Clause& c : f.original()) {
    for (Lit l : c.lits) {
      if (l == lit) {
        sum += std::ldexp(1.0, -static_cast<int>(c.size()));
        break;
      }
    }
  }
  return sum;
}

double w_cnf(std::uint32_t n) { return std::pow(5.0, 2.0 - n); }

double w_xor(std::uint32_t n) { return 5.5 * std::pow(0.85, n); }

AceWeight ace_score(const LookaheadReport& report) {
  if (report.conflicted) return {0.0, true};
  double sum = 0.0;
  for (const ReducedSize& r : report.reduced_cnf) {
    if (!r.satisfied) sum += w_cnf(r.size);
  }
  for (const ReducedSize& r : report.reduced_xor) {
    if (!r.satisfied) sum += w_xor(r.size);
  }
  return {sum, false};
}

AceWeight ace_weight(Propagator& prop, Var v, bool phase) {
  return ace_score(prop.lookahead(v, phase));
}

bool ace_phase(Propagator& prop, const JwWeights& jw, Var v, std::size_t depth,
               const PhaseParams& params) {
  if (depth >= params.ace_depth_cutoff) return jw_phase(jw, v);
  const AceWeight pos = ace_weight(prop, v, true);
  const AceWeight neg = ace_weight(prop, v, false);
  if (pos.conflicted && neg.conflicted) return true;
  if (pos.conflicted) return false;
  if (neg.conflicted) return true;
  if (pos.value > neg.value) return true;
  if (neg.value > pos.value) return false;
  return jw_phase(jw, v);
}

bool bernoulli(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

bool precosat_phase(const SavedPhases& saved, const JwWeights& jw, Var v) {
  if (auto last = saved.last_value(v)) return *last;
  return jw_phase(jw, v);
}

PhaseChoice select_phase(Var v, const PhasePolicy& policy,
                         const PhaseContext& ctx, Propagator& prop,
                         const JwWeights& jw) {
  assert(ctx.saved != nullptr);
  const PhaseParams& p = policy.params;
  switch (policy.kind) {
    case PolicyKind::JW:
      return {jw_phase(jw, v)};
    case PolicyKind::ACE:
      return {ace_phase(prop, jw, v, ctx.depth, p)};
    case PolicyKind::PrecoSAT:
      return {precosat_phase(*ctx.saved, jw, v)};
    case PolicyKind::PrecoSatTailJW: {
      if (ctx.max_level_prev_epoch) {
        const std::size_t prev = *ctx.max_level_prev_epoch;
        const std::size_t horizon = prev > p.tail_window ? prev - p.tail_window : 0;
        if (ctx.depth > horizon) return {jw_phase(jw, v)};
      }
      return {precosat_phase(*ctx.saved, jw, v)};
    }
    case PolicyKind::AcePlusPrecoSAT:
      if (ctx.decision_count < p.ace_decision_cutoff)
        return {ace_phase(prop, jw, v, ctx.depth, p)};
      return {precosat_phase(*ctx.saved, jw, v)};
    case PolicyKind::PrecoSatRandom: {
      assert(ctx.rng != nullptr);
      PhaseChoice c{precosat_phase(*ctx.saved, jw, v)};
      if (bernoulli(*ctx.rng, p.p_flip)) {
        c.value = !c.value;
        c.flipped = true;
      }
      return c;
    }
    case PolicyKind::LocalSearchPhase:
      if (auto seed = ctx.saved->ls_seed(v)) return {*seed};
      return {jw_phase(jw, v)};
  }
  return {false};
}

namespace {

class WalkState {
 public:
  WalkState(const Formula& f, std::vector<bool> assignment)
      : f_(f),
        nc_(f.cnf().size()),
        assign_(std::move(assignment)),
        true_count_(nc_, 0),
        pos_(nc_ + f.xors().size(), -1) {
    for (std::size_t i = 0; i < nc_; ++i) {
      for (Lit l : f.cnf()[i].lits)
        if (is_true(l)) ++true_count_[i];
      if (true_count_[i] == 0) add_unsat(i);
    }
    for (std::size_t j = 0; j < f.xors().size(); ++j) {
      if (!xor_satisfied(f.xors()[j], assign_)) add_unsat(nc_ + j);
    }
  }

  const std::vector<bool>& assignment() const { return assign_; }
  std::size_t unsat_count() const { return unsat_.size(); }
  std::size_t unsat_at(std::size_t i) const { return unsat_[i]; }

  /// Variables of constraint `id`.
  std::vector<Var> vars_of(std::size_t id) const {
    std::vector<Var> out;
    if (id < nc_) {
      for (Lit l : f_.cnf()[id].lits) out.push_back(l.var());
    } else {
      out = f_.xors()[id - nc_].vars;
    }
    return out;
  }

  std::size_t break_count(Var v) const {
    std::size_t b = 0;
    const Lit now_true = Lit(v, !assign_[v]);
    for (std::uint32_t ci : f_.occ_cnf(now_true))
      if (true_count_[ci] == 1) ++b;
    for (std::uint32_t xi : f_.occ_xor(v))
      if (pos_[nc_ + xi] < 0) ++b;
    return b;
  }

  void flip(Var v) {
    const Lit was_true = Lit(v, !assign_[v]);
    assign_[v] = !assign_[v];
    for (std::uint32_t ci : f_.occ_cnf(was_true)) {
      if (--true_count_[ci] == 0) add_unsat(ci);
    }
    for (std::uint32_t ci : f_.occ_cnf(~was_true)) {
      if (true_count_[ci]++ == 0) remove_unsat(ci);
    }
    for (std::uint32_t xi : f_.occ_xor(v)) {
      const std::size_t id = nc_ + xi;
      if (pos_[id] < 0)
        add_unsat(id);
      else
        remove_unsat(id);
    }
  }

 private:
  bool is_true(Lit l) const { return assign_[l.var()] != l.negated(); }

  void add_unsat(std::size_t id) {
    pos_[id] = static_cast<std::ptrdiff_t>(unsat_.size());
    unsat_.push_back(id);
  }
  void remove_unsat(std::size_t id) {
    const std::ptrdiff_t at = pos_[id];
    const std::size_t last = unsat_.back();
    unsat_[at] = last;
    pos_[last] = at;
    unsat_.pop_back();
    pos_[id] = -1;
  }

  const Formula& f_;
  std::size_t nc_;
  std::vector<bool> assign_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::ptrdiff_t> pos_;
  std::vector<std::size_t> unsat_;
};

}  // namespace

std::vector<bool> local_search_seed(const Formula& f, std::uint64_t flip_budget,
                                    Rng& rng, double walk_prob) {
  std::vector<bool> start(f.num_vars());
  std::bernoulli_distribution coin(0.5);
  for (std::size_t v = 0; v < start.size(); ++v) start[v] = coin(rng);

  WalkState state(f, std::move(start));
  std::vector<bool> best = state.assignment();
  std::size_t best_unsat = state.unsat_count();

  for (std::uint64_t step = 0; step < flip_budget && state.unsat_count() > 0;
       ++step) {
    std::uniform_int_distribution<std::size_t> pick(0, state.unsat_count() - 1);
    const std::vector<Var> vars = state.vars_of(state.unsat_at(pick(rng)));
    Var chosen = vars.front();
    if (bernoulli(rng, walk_prob)) {
      std::uniform_int_distribution<std::size_t> any(0, vars.size() - 1);
      chosen = vars[any(rng)];
    } else {
      std::size_t least = std::numeric_limits<std::size_t>::max();
      for (Var v : vars) {
        const std::size_t b = state.break_count(v);
        if (b < least) {
          least = b;
          chosen = v;
        }
      }
    }
    state.flip(chosen);
    if (state.unsat_count() < best_unsat) {
      best_unsat = state.unsat_count();
      best = state.assignment();
    }
  }
  return best;
}

}  // namespace mphase
