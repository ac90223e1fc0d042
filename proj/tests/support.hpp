#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "mphase/formula.hpp"
#include "oracle/oracle.hpp"

namespace testsupport {

inline std::vector<std::vector<mphase::Lit>> to_lits(
    const std::vector<oracle::RawClause>& clauses) {
  std::vector<std::vector<mphase::Lit>> out;
  for (const auto& c : clauses) {
    std::vector<mphase::Lit> lits;
    for (int l : c) lits.push_back(mphase::Lit::from_dimacs(l));
    out.push_back(std::move(lits));
  }
  return out;
}

inline mphase::Formula make(int num_vars, const std::vector<oracle::RawClause>& clauses) {
  return mphase::Formula::from_clauses(num_vars, to_lits(clauses));
}

/// The post-extraction view (remaining CNF plus XORs) as raw data.
inline oracle::RawFormula to_raw(const mphase::Formula& f) {
  oracle::RawFormula r;
  r.num_vars = static_cast<int>(f.num_vars());
  for (const auto& c : f.cnf()) {
    oracle::RawClause rc;
    for (mphase::Lit l : c.lits) rc.push_back(l.to_dimacs());
    r.clauses.push_back(rc);
  }
  for (const auto& x : f.xors()) {
    oracle::RawXor rx;
    for (mphase::Var v : x.vars) rx.vars.push_back(static_cast<int>(v) + 1);
    rx.odd = x.odd;
    r.xors.push_back(rx);
  }
  return r;
}

struct RandomSpec {
  int min_vars = 4;
  int max_vars = 14;
  int min_size = 1;
  int max_size = 4;
  double min_ratio = 2.0;
  double max_ratio = 6.0;
  bool with_xor = false;
  int xor_groups = 2;
  int xor_min_arity = 2;
  int xor_max_arity = 4;
};

struct RandomInstance {
  int num_vars = 0;
  std::vector<oracle::RawClause> clauses;  // XOR groups included as CNF
};

inline std::vector<int> distinct_vars(std::mt19937_64& rng, int num_vars, int k) {
  std::vector<int> all(num_vars);
  for (int i = 0; i < num_vars; ++i) all[i] = i + 1;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return all;
}

inline RandomInstance random_instance(std::mt19937_64& rng, const RandomSpec& s) {
  RandomInstance inst;
  inst.num_vars = std::uniform_int_distribution<int>(s.min_vars, s.max_vars)(rng);
  const double ratio = std::uniform_real_distribution<double>(s.min_ratio, s.max_ratio)(rng);
  const int m = std::max(1, static_cast<int>(ratio * inst.num_vars));
  std::uniform_int_distribution<int> size(s.min_size, std::min(s.max_size, inst.num_vars));
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < m; ++i) {
    oracle::RawClause c;
    for (int v : distinct_vars(rng, inst.num_vars, size(rng))) c.push_back(coin(rng) ? v : -v);
    inst.clauses.push_back(c);
  }
  if (s.with_xor) {
    for (int g = 0; g < s.xor_groups; ++g) {
      const int k = std::uniform_int_distribution<int>(
          s.xor_min_arity, std::min(s.xor_max_arity, inst.num_vars))(rng);
      oracle::RawXor x{distinct_vars(rng, inst.num_vars, k), coin(rng)};
      for (auto& c : oracle::xor_to_cnf(x)) inst.clauses.push_back(c);
    }
  }
  std::shuffle(inst.clauses.begin(), inst.clauses.end(), rng);
  return inst;
}

inline oracle::RawFormula raw_of(const RandomInstance& inst) {
  return {inst.num_vars, inst.clauses, {}};
}

}  // namespace testsupport
