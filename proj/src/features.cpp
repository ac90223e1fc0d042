#include "mphase/features.hpp"

#include <sstream>

namespace mphase {

FeatureVector extract_features(const Formula& f, const ProbeReport& report) {
  FeatureVector fv;
  const RawCounts& raw = f.raw_counts();
  fv.c = raw.clauses;
  fv.v = f.num_vars();
  fv.ratio = fv.v > 0 ? static_cast<double>(fv.c) / static_cast<double>(fv.v)
                      : 0.0;
  if (report.conflicts_seen > 0)
    fv.mean_conflict_depth = report.mean_conflict_depth;
  fv.unfixed = report.unfixed_vars;
  fv.bin = raw.binary;
  fv.xor_count = f.xors().size();
  fv.large = raw.large;
  return fv;
}

namespace {

using Rule = std::optional<std::string>;

// PrecoSAT + tail JW.
Rule rule4(const FeatureVector& f) {
  const double c = static_cast<double>(f.c);
  if (f.xor_count == 0 && f.ratio > 100 && f.v < 1500) return "4a";
  // c / bin < 0.9 cannot hold without binary clauses.
  if (f.xor_count == 0 && f.ratio > 55 && f.bin > 0 &&
      c / static_cast<double>(f.bin) < 0.9)
    return "4b";
  return std::nullopt;
}

// ACE. Subcase 3a belongs to the presolve stage.
Rule rule3(const FeatureVector& f) {
  const double c = static_cast<double>(f.c);
  const double v = static_cast<double>(f.v);
  const double bin = static_cast<double>(f.bin);
  const double x = static_cast<double>(f.xor_count);
  const double unfixed = static_cast<double>(f.unfixed);
  if (f.mean_conflict_depth && *f.mean_conflict_depth < 30) return "3b";
  if (bin > 400000 && bin > c / 2 && v / 20 > unfixed) return "3c";
  if (x > 2000 && x > c / 12 && unfixed < 15000) return "3d";
  return std::nullopt;
}

// PrecoSAT.
Rule rule2(const FeatureVector& f) {
  const double c = static_cast<double>(f.c);
  const double v = static_cast<double>(f.v);
  const double bin = static_cast<double>(f.bin);
  if (f.xor_count < 1000 && f.c > 300000) return "2a";
  if (f.xor_count > 2000 && f.unfixed < 15000) return "2b";
  if (f.ratio < 6 && c / 15 > v && c / 3 < bin / 2) return "2c";
  if (f.large > 5 && f.large < 40) return "2d";
  return std::nullopt;
}

}  // namespace

SolvePlan classify(const FeatureVector& f, RuleOrder order) {
  SolvePlan plan;
  if (f.c > 50000 && f.c < 220000) {
    plan.presolve = Presolve{{PolicyKind::PrecoSatRandom, {}}, kPresolveDecisions};
    plan.trace.emplace_back("1");
  } else if (f.c < 18000) {
    plan.presolve = Presolve{{PolicyKind::ACE, {}}, kPresolveDecisions};
    plan.trace.emplace_back("3a");
  } else {
    plan.presolve = Presolve{{PolicyKind::PrecoSAT, {}}, kPresolveDecisions};
    plan.trace.emplace_back("5-presolve");
  }

  struct Stage {
    Rule (*rule)(const FeatureVector&);
    PolicyKind policy;
  };
  const Stage priority[] = {{rule4, PolicyKind::PrecoSatTailJW},
                            {rule3, PolicyKind::ACE},
                            {rule2, PolicyKind::PrecoSAT}};
  const Stage listed[] = {{rule2, PolicyKind::PrecoSAT},
                          {rule3, PolicyKind::ACE},
                          {rule4, PolicyKind::PrecoSatTailJW}};

  for (const Stage& s : order == RuleOrder::Priority ? priority : listed) {
    if (Rule id = s.rule(f)) {
      plan.main = PhasePolicy{s.policy, {}};
      plan.trace.push_back(*id);
      return plan;
    }
  }
  plan.main = PhasePolicy{PolicyKind::AcePlusPrecoSAT, {}};
  plan.trace.emplace_back("5");
  return plan;
}

std::string format_features(const FeatureVector& f, const SolvePlan& plan) {
  std::ostringstream os;
  os << "c=" << f.c << '\n'
     << "v=" << f.v << '\n'
     << "ratio=" << f.ratio << '\n'
     << "mean_conflict_depth=" << f.mean_conflict_depth.value_or(0.0) << '\n'
     << "unfixed=" << f.unfixed << '\n'
     << "bin=" << f.bin << '\n'
     << "xor=" << f.xor_count << '\n'
     << "large=" << f.large << '\n';
  os << "plan.presolve=";
  if (plan.presolve)
    os << policy_name(plan.presolve->policy.kind) << ':'
       << plan.presolve->decision_budget;
  else
    os << "none";
  os << '\n' << "plan.main=" << policy_name(plan.main.kind) << '\n'
     << "plan.trace=";
  for (std::size_t i = 0; i < plan.trace.size(); ++i)
    os << (i ? "," : "") << plan.trace[i];
  os << '\n';
  return os.str();
}

}  // namespace mphase
