#include "mphase/formula.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace mphase {

Formula Formula::from_clauses(std::size_t num_vars,
                              std::vector<std::vector<Lit>> clauses) {
  Formula f;
  f.num_vars_ = num_vars;
  f.original_.reserve(clauses.size());
  for (auto& lits : clauses) {
    for (Lit l : lits) {
      if (l.var() >= num_vars)
        throw std::out_of_range("literal variable exceeds variable count");
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    bool tautology = false;
    for (std::size_t i = 1; i < lits.size(); ++i) {
      if (lits[i].var() == lits[i - 1].var()) {
        tautology = true;
        break;
      }
    }
    if (tautology) {
      ++f.tautologies_dropped_;
      continue;
    }
    if (lits.empty()) {
      f.trivially_unsat_ = true;
      continue;
    }
    f.original_.push_back(Clause{std::move(lits)});
  }

  for (const Clause& c : f.original_) {
    ++f.raw_.histogram[c.size()];
    if (c.size() == 2) ++f.raw_.binary;
    if (c.size() >= kLargeClauseSize) ++f.raw_.large;
  }
  f.raw_.clauses = f.original_.size();
  f.cnf_ = f.original_;
  f.rebuild_occurrences();
  return f;
}

void Formula::rebuild_occurrences() {
  occ_cnf_.assign(2 * num_vars_, {});
  occ_xor_.assign(num_vars_, {});
  for (std::uint32_t i = 0; i < cnf_.size(); ++i) {
    for (Lit l : cnf_[i].lits) occ_cnf_[l.code()].push_back(i);
  }
  for (std::uint32_t i = 0; i < xors_.size(); ++i) {
    for (Var v : xors_[i].vars) occ_xor_[v].push_back(i);
  }
}

Formula detect_xor(const Formula& f, std::size_t max_arity) {
  // Bounded so the pattern set fits into one 64-bit word.
  max_arity = std::min<std::size_t>(max_arity, 6);

  std::map<std::vector<Var>, std::vector<std::uint32_t>> by_signature;
  for (std::uint32_t i = 0; i < f.cnf_.size(); ++i) {
    const auto& lits = f.cnf_[i].lits;
    if (lits.size() < 2 || lits.size() > max_arity) continue;
    std::vector<Var> sig;
    sig.reserve(lits.size());
    for (Lit l : lits) sig.push_back(l.var());
    by_signature[std::move(sig)].push_back(i);
  }

  Formula out = f;
  std::vector<bool> removed(f.cnf_.size(), false);

  for (const auto& [vars, members] : by_signature) {
    const std::size_t k = vars.size();
    const std::size_t needed = std::size_t{1} << (k - 1);
    if (members.size() < needed) continue;

    // Literals are sorted by code, so position i holds variable vars[i].
    // Bit i of a pattern is set iff that literal is negated; a clause with
    // pattern m forbids exactly the assignment m.
    std::uint64_t present = 0;
    std::vector<unsigned> pattern(members.size());
    for (std::size_t j = 0; j < members.size(); ++j) {
      unsigned m = 0;
      const auto& lits = f.cnf_[members[j]].lits;
      for (std::size_t i = 0; i < k; ++i) {
        if (lits[i].negated()) m |= 1u << i;
      }
      pattern[j] = m;
      present |= std::uint64_t{1} << m;
    }

    for (unsigned forbidden_parity = 0; forbidden_parity < 2;
         ++forbidden_parity) {
      bool complete = true;
      for (unsigned m = 0; m < (1u << k); ++m) {
        if (static_cast<unsigned>(std::popcount(m) & 1) != forbidden_parity)
          continue;
        if (!(present >> m & 1u)) {
          complete = false;
          break;
        }
      }
      if (!complete) continue;
      // Forbidding every even-weight assignment leaves odd parity.
      out.xors_.push_back(XorConstraint{vars, forbidden_parity == 0});
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (static_cast<unsigned>(std::popcount(pattern[j]) & 1) ==
            forbidden_parity)
          removed[members[j]] = true;
      }
    }
  }

  out.cnf_.clear();
  for (std::size_t i = 0; i < f.cnf_.size(); ++i) {
    if (!removed[i]) out.cnf_.push_back(f.cnf_[i]);
  }
  out.rebuild_occurrences();
  return out;
}

std::map<std::size_t, std::size_t> clause_size_histogram(const Formula& f) {
  return f.raw_counts().histogram;
}

bool xor_satisfied(const XorConstraint& x, const std::vector<bool>& model) {
  bool parity = false;
  for (Var v : x.vars) parity ^= model[v];
  return parity == x.odd;
}

namespace {

bool clause_satisfied(const Clause& c, const std::vector<bool>& model) {
  return std::any_of(c.lits.begin(), c.lits.end(), [&](Lit l) {
    return model[l.var()] != l.negated();
  });
}

}  // namespace

bool check_model(const Formula& f, const std::vector<bool>& model) {
  if (f.trivially_unsat() || model.size() != f.num_vars()) return false;
  for (const Clause& c : f.original())
    if (!clause_satisfied(c, model)) return false;
  for (const Clause& c : f.cnf())
    if (!clause_satisfied(c, model)) return false;
  for (const XorConstraint& x : f.xors())
    if (!xor_satisfied(x, model)) return false;
  return true;
}

}  // namespace mphase
