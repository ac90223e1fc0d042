#pragma once

#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <functional>

namespace mphase {

/// Variables are 0-based internally. DIMACS variable `k` maps to `Var{k - 1}`.
using Var = std::uint32_t;

inline constexpr Var kNoVar = ~Var{0};

/// A literal packed as `2 * var + negated`.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool negated) : code_(2 * v + (negated ? 1u : 0u)) {}

  static constexpr Lit from_code(std::uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }

  /// From a signed DIMACS integer (nonzero).
  static Lit from_dimacs(int lit) {
    assert(lit != 0);
    return Lit(static_cast<Var>(std::abs(lit) - 1), lit < 0);
  }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negated() const { return code_ & 1u; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const { return from_code(code_ ^ 1u); }

  int to_dimacs() const {
    const int v = static_cast<int>(var()) + 1;
    return negated() ? -v : v;
  }

  friend constexpr bool operator==(Lit a, Lit b) = default;
  friend constexpr auto operator<=>(Lit a, Lit b) = default;

 private:
  std::uint32_t code_ = 0;
};

constexpr Lit pos_lit(Var v) { return Lit(v, false); }
constexpr Lit neg_lit(Var v) { return Lit(v, true); }

/// Three-valued assignment state.
enum class Value : std::int8_t { False = 0, True = 1, Unassigned = 2 };

constexpr Value to_value(bool b) { return b ? Value::True : Value::False; }

}  // namespace mphase

template <>
struct std::hash<mphase::Lit> {
  std::size_t operator()(mphase::Lit l) const noexcept { return l.code(); }
};
