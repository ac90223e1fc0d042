#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mphase/literal.hpp"

namespace mphase {

/// Per-variable phase memory: the last value each variable held during this
/// solve, plus an optional seed assignment from local search.
class SavedPhases {
 public:
  explicit SavedPhases(std::size_t num_vars = 0)
      : last_(num_vars, kUnset), seed_(num_vars, kUnset) {}

  void update(Var v, bool value) { last_[v] = value ? 1 : 0; }
  std::optional<bool> last_value(Var v) const { return get(last_, v); }

  void set_seed(Var v, bool value) { seed_[v] = value ? 1 : 0; }
  std::optional<bool> ls_seed(Var v) const { return get(seed_, v); }
  bool has_seed() const { return seeded_; }
  void mark_seeded() { seeded_ = true; }

  const std::vector<std::int8_t>& raw_last() const { return last_; }

 private:
  static constexpr std::int8_t kUnset = -1;
  static std::optional<bool> get(const std::vector<std::int8_t>& a, Var v) {
    if (a[v] == kUnset) return std::nullopt;
    return a[v] == 1;
  }

  std::vector<std::int8_t> last_;
  std::vector<std::int8_t> seed_;
  bool seeded_ = false;
};

}  // namespace mphase
