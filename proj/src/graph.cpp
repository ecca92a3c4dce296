#include "permgraph/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "permgraph/fenwick.hpp"

namespace permgraph {

namespace {

constexpr std::size_t kUnionFindLimit = 10'000;

void check_index(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw std::out_of_range("vertex " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
}

// c[k-1] = #{j < k : pi(j) < pi(k)}
std::vector<std::size_t> smaller_before(const Permutation& perm) {
  const std::size_t n = perm.size();
  FenwickTree<std::uint32_t> seen(n);
  std::vector<std::size_t> c(n);
  for (std::size_t k = 1; k <= n; ++k) {
    c[k - 1] = seen.prefix_sum(perm(k) - 1);
    seen.add(perm(k), 1);
  }
  return c;
}

Components relabel(std::vector<std::size_t> raw) {
  // Number components by first appearance, i.e. by smallest vertex.
  Components out;
  std::vector<std::size_t> remap(raw.size(), SIZE_MAX);
  out.label.resize(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    auto& id = remap[raw[v]];
    if (id == SIZE_MAX) id = out.count++;
    out.label[v] = id;
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> Components::members() const {
  std::vector<std::vector<std::size_t>> out(count);
  for (std::size_t v = 0; v < label.size(); ++v) out[label[v]].push_back(v + 1);
  return out;
}

void PermutationGraph::check_vertex(std::size_t k) const { check_index(k, perm_.size()); }

bool PermutationGraph::adjacent(std::size_t i, std::size_t j) const {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::out_of_range("adjacency query needs distinct vertices");
  const auto di = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j);
  const auto dv = static_cast<std::int64_t>(perm_(i)) - static_cast<std::int64_t>(perm_(j));
  return di * dv < 0;
}

std::size_t PermutationGraph::degree(std::size_t k) const {
  check_vertex(k);
  const auto v = perm_(k);
  std::size_t d = 0;
  for (std::size_t j = 1; j < k; ++j) d += perm_(j) > v;
  for (std::size_t j = k + 1; j <= perm_.size(); ++j) d += perm_(j) < v;
  return d;
}

std::vector<std::size_t> PermutationGraph::degree_sequence() const {
  // Left larger: (k-1) - c_k. Right smaller: (pi(k)-1) - c_k.
  const auto c = smaller_before(perm_);
  std::vector<std::size_t> deg(perm_.size());
  for (std::size_t k = 1; k <= perm_.size(); ++k) deg[k - 1] = (k - 1) + (perm_(k) - 1) - 2 * c[k - 1];
  return deg;
}

std::vector<std::size_t> PermutationGraph::isolated_vertices() const {
  std::vector<std::size_t> out;
  std::uint32_t prefix_max = 0;
  for (std::size_t k = 1; k <= perm_.size(); ++k) {
    prefix_max = std::max(prefix_max, perm_(k));
    // Isolated iff the prefix 1..k is {1..k} and pi(k) = k.
    if (prefix_max == k && perm_(k) == k) out.push_back(k);
  }
  return out;
}

Components PermutationGraph::connected_components(ComponentMethod method) const {
  const std::size_t n = perm_.size();
  if (method == ComponentMethod::automatic) {
    method = n <= kUnionFindLimit ? ComponentMethod::union_find : ComponentMethod::prefix_blocks;
  }
  std::vector<std::size_t> raw(n);
  if (method == ComponentMethod::union_find) {
    UnionFind uf(n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        if (perm_(i) > perm_(j)) uf.unite(i - 1, j - 1);
      }
    }
    for (std::size_t v = 0; v < n; ++v) raw[v] = uf.find(v);
  } else {
    // A block ends at k exactly when {pi(1)..pi(k)} = {1..k}.
    std::uint32_t prefix_max = 0;
    std::size_t block = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      prefix_max = std::max(prefix_max, perm_(k));
      raw[k - 1] = block;
      if (prefix_max == k) ++block;
    }
  }
  return relabel(std::move(raw));
}

std::vector<Edge> PermutationGraph::edge_list() const {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= perm_.size(); ++i) {
    for (std::size_t j = i + 1; j <= perm_.size(); ++j) {
      if (perm_(i) > perm_(j)) edges.emplace_back(i, j);
    }
  }
  return edges;
}

void DirectedPermutationGraph::check_vertex(std::size_t k) const { check_index(k, perm_.size()); }

std::size_t DirectedPermutationGraph::out_degree(std::size_t k) const {
  check_vertex(k);
  std::size_t d = 0;
  for (std::size_t j = k + 1; j <= perm_.size(); ++j) d += perm_(j) < perm_(k);
  return d;
}

std::size_t DirectedPermutationGraph::in_degree(std::size_t k) const {
  check_vertex(k);
  std::size_t d = 0;
  for (std::size_t j = 1; j < k; ++j) d += perm_(j) > perm_(k);
  return d;
}

std::vector<std::size_t> DirectedPermutationGraph::in_degree_sequence() const {
  const auto c = smaller_before(perm_);
  std::vector<std::size_t> in(perm_.size());
  for (std::size_t k = 1; k <= perm_.size(); ++k) in[k - 1] = (k - 1) - c[k - 1];
  return in;
}

std::vector<std::size_t> DirectedPermutationGraph::out_degree_sequence() const {
  const auto c = smaller_before(perm_);
  std::vector<std::size_t> out(perm_.size());
  for (std::size_t k = 1; k <= perm_.size(); ++k) out[k - 1] = (perm_(k) - 1) - c[k - 1];
  return out;
}

void write_edge_csv(std::ostream& out, const PermutationGraph& graph) {
  out << "i,j\n";
  for (const auto& [i, j] : graph.edge_list()) out << i << ',' << j << '\n';
}

UnionFind::UnionFind(std::size_t size) : parent_(size), size_(size, 1), sets_(size) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --sets_;
  return true;
}

}  // namespace permgraph
