#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "permgraph/permutation.hpp"

namespace permgraph {

using Edge = std::pair<std::size_t, std::size_t>;

/// Partition of {1..n}; `label[v-1]` is the component id of vertex v, ids
/// numbered 0..count-1 in order of each component's smallest vertex.
struct Components {
  std::vector<std::size_t> label;
  std::size_t count = 0;

  std::vector<std::vector<std::size_t>> members() const;

  friend bool operator==(const Components&, const Components&) = default;
};

enum class ComponentMethod { automatic, union_find, prefix_blocks };

/// Undirected permutation graph: i ~ j iff (i - j)(pi(i) - pi(j)) < 0.
/// Never materialized; every query reads the permutation.
class PermutationGraph {
 public:
  explicit PermutationGraph(Permutation perm) : perm_(std::move(perm)) {}

  const Permutation& permutation() const noexcept { return perm_; }
  std::size_t order() const noexcept { return perm_.size(); }

  /// Throws std::out_of_range for indices outside 1..n or i == j.
  bool adjacent(std::size_t i, std::size_t j) const;

  std::size_t degree(std::size_t k) const;

  /// All degrees in one O(n log n) scan.
  std::vector<std::size_t> degree_sequence() const;

  std::vector<std::size_t> isolated_vertices() const;

  /// `automatic` uses union-find up to 10^4 vertices and prefix blocks beyond.
  Components connected_components(ComponentMethod method = ComponentMethod::automatic) const;

  /// Inversion pairs (i < j) in lexicographic order.
  std::vector<Edge> edge_list() const;

 private:
  void check_vertex(std::size_t k) const;

  Permutation perm_;
};

/// Edge i -> j iff i < j and (i, j) is an inversion.
class DirectedPermutationGraph {
 public:
  explicit DirectedPermutationGraph(Permutation perm) : perm_(std::move(perm)) {}

  const Permutation& permutation() const noexcept { return perm_; }
  std::size_t order() const noexcept { return perm_.size(); }

  /// #{j > k : pi(j) < pi(k)}
  std::size_t out_degree(std::size_t k) const;

  /// #{j < k : pi(j) > pi(k)}
  std::size_t in_degree(std::size_t k) const;

  std::vector<std::size_t> in_degree_sequence() const;
  std::vector<std::size_t> out_degree_sequence() const;

 private:
  void check_vertex(std::size_t k) const;

  Permutation perm_;
};

/// CSV with header `i,j`, one 1-based edge per row.
void write_edge_csv(std::ostream& out, const PermutationGraph& graph);

/// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t size);

  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t set_count() const noexcept { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

}  // namespace permgraph
