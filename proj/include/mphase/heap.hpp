#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mphase/literal.hpp"

namespace mphase {

/// Indexed binary max-heap over variables keyed by an external activity
/// array. Equal activities order by smaller variable index.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& activity)
      : activity_(&activity), index_(activity.size(), kAbsent) {}

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(Var v) const { return index_[v] != kAbsent; }
  const std::vector<Var>& elements() const { return heap_; }

  void insert(Var v) {
    if (contains(v)) return;
    index_[v] = heap_.size();
    heap_.push_back(v);
    sift_up(index_[v]);
  }

  /// Restores order after activity[v] increased.
  void increased(Var v) {
    if (contains(v)) sift_up(index_[v]);
  }

  Var pop() {
    const Var top = heap_.front();
    const Var last = heap_.back();
    heap_.pop_back();
    index_[top] = kAbsent;
    if (!heap_.empty()) {
      heap_[0] = last;
      index_[last] = 0;
      sift_down(0);
    }
    return top;
  }

 private:
  static constexpr std::size_t kAbsent = ~std::size_t{0};

  bool before(Var a, Var b) const {
    const double x = (*activity_)[a];
    const double y = (*activity_)[b];
    return x > y || (x == y && a < b);
  }

  void sift_up(std::size_t i) {
    const Var v = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!before(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      index_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  void sift_down(std::size_t i) {
    const Var v = heap_[i];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= heap_.size()) break;
      if (child + 1 < heap_.size() && before(heap_[child + 1], heap_[child]))
        ++child;
      if (!before(heap_[child], v)) break;
      heap_[i] = heap_[child];
      index_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  const std::vector<double>* activity_;
  std::vector<std::size_t> index_;
  std::vector<Var> heap_;
};

}  // namespace mphase
