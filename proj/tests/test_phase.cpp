#include <gtest/gtest.h>

#include <random>

#include "mphase/phase.hpp"
#include "mphase/solver.hpp"
#include "oracle/oracle.hpp"
#include "support.hpp"

using namespace mphase;
using testsupport::make;

namespace {

Lit L(int d) { return Lit::from_dimacs(d); }

const std::vector<oracle::RawClause> kJwFixture{{1, 2}, {1, -3, 4}, {-1, 2}, {-1}, {2, 3}};

PhaseContext ctx_with(SavedPhases& saved, Rng& rng, std::size_t depth = 0) {
  PhaseContext c;
  c.depth = depth;
  c.rng = &rng;
  c.saved = &saved;
  return c;
}

}  // namespace

TEST(Weights, Tables) {
  EXPECT_DOUBLE_EQ(w_cnf(1), 5.0);
  EXPECT_DOUBLE_EQ(w_cnf(2), 1.0);
  EXPECT_DOUBLE_EQ(w_cnf(3), 0.2);
  EXPECT_NEAR(w_xor(2), 3.97375, 1e-12);
}

TEST(Jw, FixtureWeights) {
  const Formula f = make(4, kJwFixture);
  EXPECT_DOUBLE_EQ(jw_literal_weight(f, L(1)), 0.375);
  EXPECT_DOUBLE_EQ(jw_literal_weight(f, L(-1)), 0.75);
  EXPECT_DOUBLE_EQ(oracle::naive_jw(kJwFixture, 1), 0.375);
  const JwWeights w(f);
  EXPECT_DOUBLE_EQ(w.pos(0), 0.375);
  EXPECT_DOUBLE_EQ(w.neg(0), 0.75);
  EXPECT_FALSE(jw_phase(w, 0));
  EXPECT_EQ(jw_literal_weight(f, L(-4)), 0.0);
}

TEST(Jw, TieAndPositive) {
  const Formula tie = make(2, {{1, 2}, {-1, 2}});
  EXPECT_FALSE(jw_phase(JwWeights(tie), 0));
  EXPECT_FALSE(jw_phase(JwWeights(make(1, {})), 0));
  const Formula pos = make(2, {{1}, {-1, 2}});  // 0.5 vs 0.25
  EXPECT_TRUE(jw_phase(JwWeights(pos), 0));
}

TEST(Jw, BelowOneIsSatisfiable) {
  const oracle::RawFormula s{2, {{1, 2}, {-1}}, {}};
  double total = 0;
  for (const auto& c : s.clauses) total += std::pow(2.0, -static_cast<double>(c.size()));
  EXPECT_LT(total, 1.0);
  EXPECT_GT(oracle::brute_force_solve(s).models, 0u);
}

TEST(Jw, UsesPreExtractionClauses) {
  const Formula f = detect_xor(make(2, {{1, 2}, {-1, -2}}));
  ASSERT_TRUE(f.cnf().empty());
  EXPECT_DOUBLE_EQ(JwWeights(f).pos(0), 0.25);
}

TEST(Jw, StaticAcrossSolve) {
  std::mt19937_64 rng(1);
  testsupport::RandomSpec spec;
  spec.min_vars = spec.max_vars = 40;
  spec.min_ratio = spec.max_ratio = 4.2;
  spec.min_size = spec.max_size = 3;
  const Formula f = make(40, testsupport::random_instance(rng, spec).clauses);
  Solver s(f);
  s.solve(PhasePolicy{PolicyKind::ACE, {}});
  EXPECT_EQ(s.jw(), JwWeights(f));
}

TEST(Ace, FixtureWeights) {
  const Formula f = make(3, {{1, 2}, {-1, 2, 3}, {-2, 3}});
  Propagator p(f);
  const AceWeight t = ace_weight(p, 0, true);
  const AceWeight fl = ace_weight(p, 0, false);
  EXPECT_DOUBLE_EQ(t.value, 1.0);
  EXPECT_FALSE(t.conflicted);
  EXPECT_DOUBLE_EQ(fl.value, 0.0);
  EXPECT_TRUE(ace_phase(p, JwWeights(f), 0, 0, {}));
}

TEST(Ace, XorTerm) {
  const Formula f = detect_xor(make(3, oracle::xor_to_cnf({{1, 2, 3}, true})));
  ASSERT_EQ(f.xors().size(), 1u);
  Propagator p(f);
  EXPECT_NEAR(ace_weight(p, 0, true).value, 3.97375, 1e-12);
}

TEST(Ace, DepthCutoffDelegatesToJw) {
  const Formula f = make(3, {{1, 2}, {-1, 2, 3}, {-2, 3}, {-1, 3}, {-1, -3}});
  Propagator p(f);
  const JwWeights jw(f);
  ASSERT_FALSE(jw_phase(jw, 0));
  const auto calls = p.lookahead_calls();
  EXPECT_FALSE(ace_phase(p, jw, 0, 30, {}));
  EXPECT_EQ(p.lookahead_calls(), calls);
  ace_phase(p, jw, 0, 29, {});
  EXPECT_EQ(p.lookahead_calls(), calls + 2);
}

TEST(Ace, ConflictRules) {
  // x1=false conflicts, x1=true is fine.
  const Formula one = make(2, {{1, 2}, {1, -2}});
  Propagator p1(one);
  EXPECT_TRUE(ace_phase(p1, JwWeights(one), 0, 0, {}));
  // Both phases conflict.
  const Formula both = make(3, {{1, 2}, {1, -2}, {-1, 3}, {-1, -3}});
  Propagator p2(both);
  EXPECT_TRUE(ace_weight(p2, 0, true).conflicted);
  EXPECT_TRUE(ace_weight(p2, 0, false).conflicted);
  EXPECT_EQ(ace_weight(p2, 0, true).value, 0.0);
  EXPECT_TRUE(ace_phase(p2, JwWeights(both), 0, 0, {}));
  // Only x1=true conflicts.
  const Formula neg = make(2, {{-1, 2}, {-1, -2}});
  Propagator p3(neg);
  EXPECT_FALSE(ace_phase(p3, JwWeights(neg), 0, 0, {}));
}

TEST(Ace, IsolatedVariableTiesToJw) {
  const Formula f = make(2, {{2}});
  Propagator p(f);
  EXPECT_EQ(ace_weight(p, 0, true).value, 0.0);
  EXPECT_FALSE(ace_phase(p, JwWeights(f), 0, 0, {}));
}

TEST(Ace, ArgmaxBelowCutoff) {
  std::mt19937_64 rng(4);
  testsupport::RandomSpec spec;
  spec.min_size = 2;
  spec.with_xor = true;
  for (int i = 0; i < 100; ++i) {
    const auto inst = testsupport::random_instance(rng, spec);
    const Formula f = detect_xor(make(inst.num_vars, inst.clauses));
    Propagator p(f);
    if (!p.consistent()) continue;
    const JwWeights jw(f);
    for (Var v = 0; v < f.num_vars(); ++v) {
      if (p.value(v) != Value::Unassigned) continue;
      const AceWeight t = ace_weight(p, v, true);
      const AceWeight fl = ace_weight(p, v, false);
      EXPECT_EQ(ace_phase(p, jw, v, 40, {}), jw_phase(jw, v));
      if (t.conflicted || fl.conflicted || t.value == fl.value) continue;
      EXPECT_EQ(ace_phase(p, jw, v, 0, {}), t.value > fl.value);
    }
  }
}

TEST(SelectPhase, PrecoSat) {
  const Formula f = make(2, {{1}, {1, 2}, {-1, 2}});  // w(+x1) > w(-x1)
  Propagator p(f);
  const JwWeights jw(f);
  SavedPhases saved(2);
  Rng rng(0);
  const PhasePolicy pol{PolicyKind::PrecoSAT, {}};
  EXPECT_TRUE(select_phase(0, pol, ctx_with(saved, rng), p, jw).value);
  saved.update(0, false);
  EXPECT_FALSE(select_phase(0, pol, ctx_with(saved, rng), p, jw).value);
}

TEST(SelectPhase, TailJw) {
  const Formula f = make(2, {{1}, {1, 2}, {-1, 2}});
  Propagator p(f);
  const JwWeights jw(f);
  SavedPhases saved(2);
  saved.update(0, false);
  Rng rng(0);
  const PhasePolicy pol{PolicyKind::PrecoSatTailJW, {}};
  PhaseContext c = ctx_with(saved, rng, 50);
  // First epoch: plain PrecoSAT.
  EXPECT_FALSE(select_phase(0, pol, c, p, jw).value);
  c.max_level_prev_epoch = 60;
  c.depth = 40;
  EXPECT_FALSE(select_phase(0, pol, c, p, jw).value);
  c.depth = 41;
  EXPECT_TRUE(select_phase(0, pol, c, p, jw).value);
  c.max_level_prev_epoch = 10;
  c.depth = 1;
  EXPECT_TRUE(select_phase(0, pol, c, p, jw).value);
  c.depth = 0;
  EXPECT_FALSE(select_phase(0, pol, c, p, jw).value);
}

TEST(SelectPhase, AcePlusPrecoSatCutoff) {
  const Formula f = make(3, {{1, 2}, {-1, 2, 3}, {-2, 3}});
  Propagator p(f);
  const JwWeights jw(f);
  SavedPhases saved(3);
  saved.update(0, false);
  Rng rng(0);
  const PhasePolicy pol{PolicyKind::AcePlusPrecoSAT, {}};
  PhaseContext c = ctx_with(saved, rng);
  c.decision_count = 299999;
  EXPECT_TRUE(select_phase(0, pol, c, p, jw).value);
  c.decision_count = 300000;
  const auto calls = p.lookahead_calls();
  EXPECT_FALSE(select_phase(0, pol, c, p, jw).value);
  EXPECT_EQ(p.lookahead_calls(), calls);
}

TEST(SelectPhase, LocalSearchSeed) {
  const Formula f = make(2, {{1}, {1, 2}, {-1, 2}});
  Propagator p(f);
  const JwWeights jw(f);
  SavedPhases saved(2);
  Rng rng(0);
  const PhasePolicy pol{PolicyKind::LocalSearchPhase, {}};
  EXPECT_TRUE(select_phase(0, pol, ctx_with(saved, rng), p, jw).value);
  saved.set_seed(0, false);
  EXPECT_FALSE(select_phase(0, pol, ctx_with(saved, rng), p, jw).value);
}

TEST(SelectPhase, FlipRate) {
  const Formula f = make(1, {{1}});
  Propagator p(f);
  const JwWeights jw(f);
  SavedPhases saved(1);
  Rng rng(2024);
  const PhasePolicy pol{PolicyKind::PrecoSatRandom, {}};
  int flips = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const PhaseChoice c = select_phase(0, pol, ctx_with(saved, rng), p, jw);
    EXPECT_EQ(c.value, !c.flipped);
    flips += c.flipped;
  }
  const double rate = static_cast<double>(flips) / n;
  EXPECT_NEAR(rate, 1.0 / 30.0, 0.2 / 30.0);
}

TEST(SelectPhase, TotalOverPolicies) {
  const Formula f = make(3, {{1, 2}, {-1, 2, 3}, {-2, 3}});
  Propagator p(f);
  const JwWeights jw(f);
  SavedPhases saved(3);
  Rng rng(0);
  for (PolicyKind k : kAllPolicies) {
    const std::uint64_t before = p.fingerprint();
    select_phase(1, PhasePolicy{k, {}}, ctx_with(saved, rng), p, jw);
    EXPECT_EQ(p.fingerprint(), before) << policy_name(k);
  }
}

TEST(SavedPhase, Behaviour) {
  SavedPhases s(3);
  EXPECT_FALSE(s.last_value(2));
  s.update(2, true);
  EXPECT_EQ(s.last_value(2), true);
  s.update(2, false);
  EXPECT_EQ(s.last_value(2), false);
}

TEST(SavedPhase, RedecideAfterBacktrack) {
  const Formula f = make(3, {{1, 2, 3}});
  Solver s(f);
  s.assume(L(3));
  s.propagate();
  s.backtrack(0);
  EXPECT_EQ(s.saved_phases().last_value(2), true);
  EXPECT_TRUE(precosat_phase(s.saved_phases(), s.jw(), 2));
}

TEST(LocalSearch, Examples) {
  std::mt19937_64 gen(12);
  testsupport::RandomSpec spec;
  spec.min_vars = spec.max_vars = 10;
  spec.min_size = spec.max_size = 3;
  spec.min_ratio = spec.max_ratio = 3.0;
  int satisfied = 0, sat_instances = 0;
  for (int i = 0; i < 20; ++i) {
    const auto inst = testsupport::random_instance(gen, spec);
    if (oracle::brute_force_solve(testsupport::raw_of(inst)).models == 0) continue;
    ++sat_instances;
    const Formula f = make(10, inst.clauses);
    Rng rng(i);
    const auto seed = local_search_seed(f, 100000, rng);
    if (!check_model(f, seed)) continue;
    ++satisfied;
    Solver s(f, i);
    const SolverVerdict v = s.solve(PhasePolicy{PolicyKind::LocalSearchPhase, {}});
    EXPECT_TRUE(v.is_sat());
    EXPECT_LE(s.stats().decisions, 10u);
    EXPECT_EQ(s.stats().conflicts, 0u);
  }
  EXPECT_GT(sat_instances, 0);
  EXPECT_EQ(satisfied, sat_instances);
}

TEST(LocalSearch, ZeroBudgetAndDeterminism) {
  const Formula f = make(8, {{1, 2}, {-3, 4}, {5, -6, 7}});
  Rng a(77), b(77);
  const auto start = local_search_seed(f, 0, a);
  std::vector<bool> manual(8);
  std::bernoulli_distribution coin(0.5);
  for (auto&& bit : manual) bit = coin(b);
  EXPECT_EQ(start, manual);
  Rng c(5), d(5);
  EXPECT_EQ(local_search_seed(f, 1000, c), local_search_seed(f, 1000, d));
}

TEST(LocalSearch, HandlesXors) {
  const Formula f = detect_xor(make(4, [] {
    auto c = oracle::xor_to_cnf({{1, 2, 3}, true});
    for (auto& x : oracle::xor_to_cnf({{2, 3, 4}, false})) c.push_back(x);
    return c;
  }()));
  ASSERT_EQ(f.xors().size(), 2u);
  Rng rng(3);
  EXPECT_TRUE(check_model(f, local_search_seed(f, 10000, rng)));
}
