#pragma once

#include <cstddef>
#include <vector>

namespace permgraph {

/// Prefix sums over positions 1..size with point updates, O(log n) each.
template <typename T>
class FenwickTree {
 public:
  explicit FenwickTree(std::size_t size) : tree_(size + 1, T{}) {}

  std::size_t size() const noexcept { return tree_.size() - 1; }

  void add(std::size_t pos, const T& delta) {
    for (; pos < tree_.size(); pos += pos & (~pos + 1)) tree_[pos] += delta;
  }

  /// Sum over 1..pos (pos = 0 gives the empty sum).
  T prefix_sum(std::size_t pos) const {
    T sum{};
    for (; pos > 0; pos -= pos & (~pos + 1)) sum += tree_[pos];
    return sum;
  }

  void clear() { std::fill(tree_.begin(), tree_.end(), T{}); }

 private:
  std::vector<T> tree_;
};

}  // namespace permgraph
