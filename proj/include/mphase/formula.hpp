#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mphase/literal.hpp"

namespace mphase {

enum class ClauseOrigin : std::uint8_t { Original, Learned };

struct Clause {
  std::vector<Lit> lits;
  ClauseOrigin origin = ClauseOrigin::Original;
  std::uint32_t lbd = 0;  // learned clauses only

  std::size_t size() const { return lits.size(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Parity constraint: the number of true variables is odd iff `odd`.
struct XorConstraint {
  std::vector<Var> vars;  // sorted, distinct
  bool odd = false;

  friend bool operator==(const XorConstraint&, const XorConstraint&) = default;
};

/// Clause statistics taken after parse-time normalization and before XOR
/// extraction. Never changes afterwards.
struct RawCounts {
  std::size_t clauses = 0;
  std::size_t binary = 0;
  std::size_t large = 0;  // size >= 9
  std::map<std::size_t, std::size_t> histogram;
};

inline constexpr std::size_t kLargeClauseSize = 9;
inline constexpr std::size_t kDefaultXorArityCap = 6;

class Formula {
 public:
  Formula() = default;

  /// Builds a normalized formula: duplicate literals inside a clause are
  /// merged, tautologies dropped, and an empty clause sets the
  /// trivially-unsat marker instead of being stored.
  static Formula from_clauses(std::size_t num_vars,
                              std::vector<std::vector<Lit>> clauses);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Clause>& cnf() const { return cnf_; }
  const std::vector<XorConstraint>& xors() const { return xors_; }
  /// Normalized CNF before XOR extraction.
  const std::vector<Clause>& original() const { return original_; }
  const RawCounts& raw_counts() const { return raw_; }
  bool trivially_unsat() const { return trivially_unsat_; }
  std::size_t tautologies_dropped() const { return tautologies_dropped_; }

  /// Indices into cnf() of the clauses containing `l`.
  std::span<const std::uint32_t> occ_cnf(Lit l) const {
    return occ_cnf_[l.code()];
  }
  /// Indices into xors() of the constraints containing `v`.
  std::span<const std::uint32_t> occ_xor(Var v) const { return occ_xor_[v]; }

  /// Populated by the DIMACS reader.
  std::vector<std::string> warnings;

  friend Formula detect_xor(const Formula& f, std::size_t max_arity);

 private:
  void rebuild_occurrences();

  std::size_t num_vars_ = 0;
  std::vector<Clause> cnf_;
  std::vector<XorConstraint> xors_;
  std::vector<Clause> original_;
  std::vector<std::vector<std::uint32_t>> occ_cnf_;
  std::vector<std::vector<std::uint32_t>> occ_xor_;
  RawCounts raw_;
  bool trivially_unsat_ = false;
  std::size_t tautologies_dropped_ = 0;
};

/// Replaces every complete CNF encoding of a parity constraint over
/// 2..max_arity variables with a native XorConstraint. Matching is exact on
/// polarity patterns; partial groups are left untouched.
Formula detect_xor(const Formula& f,
                   std::size_t max_arity = kDefaultXorArityCap);

/// Clause-size histogram of the pre-extraction clause set.
std::map<std::size_t, std::size_t> clause_size_histogram(const Formula& f);

/// True iff `model` (indexed by Var) satisfies every original clause, every
/// remaining CNF clause and every XOR constraint.
bool check_model(const Formula& f, const std::vector<bool>& model);

bool xor_satisfied(const XorConstraint& x, const std::vector<bool>& model);

}  // namespace mphase
