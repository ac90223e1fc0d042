#pragma once

// Reference implementations used only by tests. Everything here works on
// plain DIMACS integers and dense vectors so it shares no code with the
// library under test.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oracle {

using RawClause = std::vector<int>;  // DIMACS literals, no terminator

struct RawXor {
  std::vector<int> vars;  // 1-based
  bool odd = false;
};

struct RawFormula {
  int num_vars = 0;
  std::vector<RawClause> clauses;
  std::vector<RawXor> xors;
};

inline bool lit_true(int lit, std::uint64_t bits) {
  const bool v = (bits >> (std::abs(lit) - 1)) & 1u;
  return lit > 0 ? v : !v;
}

inline bool satisfies(const RawFormula& f, std::uint64_t bits) {
  for (const RawClause& c : f.clauses) {
    bool sat = false;
    for (int l : c) sat = sat || lit_true(l, bits);
    if (!sat) return false;
  }
  for (const RawXor& x : f.xors) {
    bool parity = false;
    for (int v : x.vars) parity ^= lit_true(v, bits);
    if (parity != x.odd) return false;
  }
  return true;
}

struct BruteForce {
  std::uint64_t models = 0;
  std::optional<std::vector<bool>> witness;
};

/// Exhaustive enumeration, V <= 20.
inline BruteForce brute_force_solve(const RawFormula& f) {
  if (f.num_vars > 20) throw std::invalid_argument("brute force limited to 20 vars");
  BruteForce out;
  const std::uint64_t n = std::uint64_t{1} << f.num_vars;
  for (std::uint64_t bits = 0; bits < n; ++bits) {
    if (!satisfies(f, bits)) continue;
    if (!out.witness) {
      std::vector<bool> w(f.num_vars);
      for (int v = 0; v < f.num_vars; ++v) w[v] = (bits >> v) & 1u;
      out.witness = w;
    }
    ++out.models;
  }
  return out;
}

/// True iff the clause set and the XOR have identical truth tables over the
/// XOR's variables. Every clause variable must belong to the XOR.
inline bool tt_equivalent(const std::vector<RawClause>& clauses, const RawXor& x) {
  const int k = static_cast<int>(x.vars.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    auto value_of = [&](int var) -> std::optional<bool> {
      for (int i = 0; i < k; ++i)
        if (x.vars[i] == var) return (m >> i) & 1u;
      return std::nullopt;
    };
    bool cnf = true;
    for (const RawClause& c : clauses) {
      bool sat = false;
      for (int l : c) {
        const auto v = value_of(std::abs(l));
        if (!v) return false;
        sat = sat || (l > 0 ? *v : !*v);
      }
      cnf = cnf && sat;
    }
    bool parity = false;
    for (int i = 0; i < k; ++i) parity ^= (m >> i) & 1u;
    if (cnf != (parity == x.odd)) return false;
  }
  return true;
}

/// Partial assignment: 0 unassigned, +1 true, -1 false (1-based, slot 0 unused).
using Partial = std::vector<int>;

inline int lit_value(const Partial& a, int lit) {
  const int v = a[std::abs(lit)];
  return lit > 0 ? v : -v;
}

/// Queue-free unit propagation: sweeps every constraint until nothing
/// changes. Returns false on conflict.
inline bool naive_up(const RawFormula& f, Partial& a) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const RawClause& c : f.clauses) {
      int unassigned = 0, last = 0;
      bool sat = false;
      for (int l : c) {
        const int v = lit_value(a, l);
        if (v > 0) sat = true;
        if (v == 0) ++unassigned, last = l;
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        a[std::abs(last)] = last > 0 ? 1 : -1;
        changed = true;
      }
    }
    for (const RawXor& x : f.xors) {
      int unassigned = 0, last = 0;
      bool parity = false;
      for (int v : x.vars) {
        if (a[v] == 0)
          ++unassigned, last = v;
        else
          parity ^= a[v] > 0;
      }
      if (unassigned == 0 && parity != x.odd) return false;
      if (unassigned == 1) {
        a[last] = (parity != x.odd) ? 1 : -1;
        changed = true;
      }
    }
  }
  return true;
}

struct NaiveAce {
  double value = 0.0;
  bool conflicted = false;
};

/// ACE score of var = phase on top of `base`: propagate on a copy, then sum
/// 5^(2-n) over unsatisfied clauses containing var and 5.5*0.85^n over
/// unsatisfied XORs containing var, n the remaining unassigned count.
inline NaiveAce naive_ace(const RawFormula& f, int var, bool phase, Partial base) {
  base[var] = phase ? 1 : -1;
  if (!naive_up(f, base)) return {0.0, true};
  NaiveAce out;
  for (const RawClause& c : f.clauses) {
    bool mentions = false, sat = false;
    int n = 0;
    for (int l : c) {
      mentions = mentions || std::abs(l) == var;
      const int v = lit_value(base, l);
      if (v > 0) sat = true;
      if (v == 0) ++n;
    }
    if (mentions && !sat) out.value += std::pow(5.0, 2.0 - n);
  }
  for (const RawXor& x : f.xors) {
    bool mentions = false;
    int n = 0;
    bool parity = false;
    for (int v : x.vars) {
      mentions = mentions || v == var;
      if (base[v] == 0)
        ++n;
      else
        parity ^= base[v] > 0;
    }
    if (!mentions || (n == 0 && parity == x.odd)) continue;
    out.value += 5.5 * std::pow(0.85, n);
  }
  return out;
}

/// Jeroslow-Wang literal weight: sum of 2^-|c| over clauses containing lit.
inline double naive_jw(const std::vector<RawClause>& clauses, int lit) {
  double sum = 0.0;
  for (const RawClause& c : clauses)
    for (int l : c)
      if (l == lit) {
        sum += std::pow(2.0, -static_cast<double>(c.size()));
        break;
      }
  return sum;
}

/// CNF clauses of an XOR: one per assignment of the wrong parity.
inline std::vector<RawClause> xor_to_cnf(const RawXor& x) {
  std::vector<RawClause> out;
  const int k = static_cast<int>(x.vars.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    bool parity = false;
    for (int i = 0; i < k; ++i) parity ^= (m >> i) & 1u;
    if (parity == x.odd) continue;
    RawClause c;
    for (int i = 0; i < k; ++i) c.push_back(((m >> i) & 1u) ? -x.vars[i] : x.vars[i]);
    out.push_back(c);
  }
  return out;
}

}  // namespace oracle
