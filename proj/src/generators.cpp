#include "mphase/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mphase {

std::vector<std::vector<Lit>> encode_xor(const std::vector<Var>& vars,
                                         bool odd) {
  const std::size_t k = vars.size();
  std::vector<std::vector<Lit>> out;
  for (unsigned m = 0; m < (1u << k); ++m) {
    // Forbid assignment m (bit i = value of vars[i]) when its parity is wrong.
    if ((std::popcount(m) & 1) == (odd ? 1 : 0)) continue;
    std::vector<Lit> clause;
    for (std::size_t i = 0; i < k; ++i) clause.push_back(Lit(vars[i], m >> i & 1u));
    out.push_back(std::move(clause));
  }
  return out;
}

std::string to_dimacs(std::size_t num_vars,
                      const std::vector<std::vector<Lit>>& clauses,
                      const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) os << "c " << comment << '\n';
  os << "p cnf " << num_vars << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) {
    for (Lit l : c) os << l.to_dimacs() << ' ';
    os << "0\n";
  }
  return os.str();
}

namespace {

// Appends a chain computing the parity of `order` and forcing it to `odd`.
void parity_chain(const std::vector<Var>& order, bool odd, Var& next_var,
                  std::vector<std::vector<Lit>>& clauses) {
  Var acc = order[0];
  for (std::size_t i = 1; i + 1 < order.size(); ++i) {
    const Var t = next_var++;
    auto enc = encode_xor({acc, order[i], t}, false);
    clauses.insert(clauses.end(), enc.begin(), enc.end());
    acc = t;
  }
  auto enc = encode_xor({acc, order.back()}, odd);
  clauses.insert(clauses.end(), enc.begin(), enc.end());
}

}  // namespace

std::string gen_parity_chain(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("parity-chain needs at least 2 variables");
  Rng rng(seed);
  std::vector<Var> order(n);
  std::iota(order.begin(), order.end(), Var{0});
  std::vector<std::vector<Lit>> clauses;
  Var next = static_cast<Var>(n);

  std::shuffle(order.begin(), order.end(), rng);
  parity_chain(order, true, next, clauses);
  std::shuffle(order.begin(), order.end(), rng);
  parity_chain(order, false, next, clauses);
  std::shuffle(clauses.begin(), clauses.end(), rng);

  return to_dimacs(next, clauses,
                   "parity-chain n=" + std::to_string(n) +
                       " seed=" + std::to_string(seed));
}

std::string gen_pigeonhole(std::size_t n) {
  if (n < 1) throw std::invalid_argument("pigeonhole needs at least 1 hole");
  const std::size_t pigeons = n + 1;
  auto var = [n](std::size_t i, std::size_t j) { return static_cast<Var>(i * n + j); };
  std::vector<std::vector<Lit>> clauses;
  for (std::size_t i = 0; i < pigeons; ++i) {
    std::vector<Lit> some;
    for (std::size_t j = 0; j < n; ++j) some.push_back(pos_lit(var(i, j)));
    clauses.push_back(std::move(some));
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t a = 0; a < pigeons; ++a)
      for (std::size_t b = a + 1; b < pigeons; ++b)
        clauses.push_back({neg_lit(var(a, j)), neg_lit(var(b, j))});
  return to_dimacs(pigeons * n, clauses,
                   "pigeonhole PHP(" + std::to_string(pigeons) + "," +
                       std::to_string(n) + ")");
}

std::string gen_random_ksat(std::size_t n, std::size_t k, double ratio,
                            std::uint64_t seed) {
  if (k == 0 || k > n) throw std::invalid_argument("random-ksat needs 1 <= k <= n");
  Rng rng(seed);
  const auto m = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  std::uniform_int_distribution<Var> pick(0, static_cast<Var>(n - 1));
  std::bernoulli_distribution sign(0.5);
  std::vector<std::vector<Lit>> clauses;
  clauses.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<Lit> clause;
    while (clause.size() < k) {
      const Var v = pick(rng);
      if (std::any_of(clause.begin(), clause.end(), [v](Lit l) { return l.var() == v; }))
        continue;
      clause.push_back(Lit(v, sign(rng)));
    }
    clauses.push_back(std::move(clause));
  }
  std::ostringstream comment;
  comment << "random-ksat n=" << n << " k=" << k << " ratio=" << ratio
          << " seed=" << seed;
  return to_dimacs(n, clauses, comment.str());
}

}  // namespace mphase
