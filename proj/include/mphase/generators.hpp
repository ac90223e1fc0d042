#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mphase/literal.hpp"
#include "mphase/phase.hpp"

namespace mphase {

/// CNF encoding of a parity constraint: one clause per forbidden assignment,
/// 2^(k-1) clauses of size k.
std::vector<std::vector<Lit>> encode_xor(const std::vector<Var>& vars, bool odd);

/// Two Tseitin-chained parity computations over the same `n` variables in
/// different orders, constrained to opposite results. Unsatisfiable for
/// n >= 2. Uses n + 2(n-2) variables.
std::string gen_parity_chain(std::size_t n, std::uint64_t seed);

/// Pigeonhole PHP(n+1, n). Unsatisfiable for n >= 1.
std::string gen_pigeonhole(std::size_t n);

/// Uniform random k-CNF with round(ratio * n) clauses over distinct variables.
std::string gen_random_ksat(std::size_t n, std::size_t k, double ratio,
                            std::uint64_t seed);

/// DIMACS text for an explicit clause list.
std::string to_dimacs(std::size_t num_vars,
                      const std::vector<std::vector<Lit>>& clauses,
                      const std::string& comment = {});

}  // namespace mphase
