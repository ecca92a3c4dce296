#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permgraph/numeric.hpp"
#include "permgraph/permutation.hpp"

namespace permgraph {

enum class StatisticName {
  inversions,
  cliques_m,
  increasing_m,
  cycles_at_least_m,
  total_increasing,
  lis,
  level,
  degree_k,
  in_degree_k,
  min_degree,
  max_degree,
  isolated_count,
  isolated_k,
  isolated_run,
  component_count,
  degree_d_count,
  common_neighbor,
};

/// Integer parameters of a statistic. Which ones are required depends on the name:
///   cliques_m, increasing_m, cycles_at_least_m: m
///   degree_k, in_degree_k, isolated_k: k
///   degree_d_count: d
///   isolated_run: i and k (vertices i..i+k all isolated)
///   common_neighbor: i and j (some third vertex adjacent to both)
struct StatisticParams {
  std::optional<long> m, k, d, i, j;

  friend bool operator==(const StatisticParams&, const StatisticParams&) = default;
};

/// Shared vocabulary for the oracle, Monte Carlo harness and CLI.
struct StatisticId {
  StatisticName name = StatisticName::inversions;
  StatisticParams params;

  /// Throws std::invalid_argument when a required parameter is missing or an
  /// unused one is present.
  void validate() const;

  /// Throws std::out_of_range when the parameters do not fit permutations of size n.
  void validate_for(std::size_t n) const;

  /// e.g. "cliques_m(m=3)".
  std::string describe() const;

  friend bool operator==(const StatisticId&, const StatisticId&) = default;
};

std::string_view statistic_name(StatisticName name);
StatisticName parse_statistic_name(std::string_view text);
std::vector<std::string_view> statistic_names();

BigCount count_inversions(const Permutation& perm);

/// Number of increasing subsequences of length m; 1 <= m <= n.
BigCount count_increasing_subsequences(const Permutation& perm, std::size_t m);

/// Number of m-cliques of the permutation graph (decreasing subsequences of length m).
BigCount count_m_cliques(const Permutation& perm, std::size_t m);

/// The subsequence statistic identified with "cycles of size at least m"
/// (equal to count_m_cliques); m >= 3. Graph simple cycles are counted only by
/// the oracle's brute force.
BigCount count_cycles_at_least(const Permutation& perm, std::size_t m);

/// Increasing subsequences of every length, the empty one included.
BigCount count_total_increasing_subsequences(const Permutation& perm);

std::size_t longest_increasing_subsequence_length(const Permutation& perm);
std::size_t longest_decreasing_subsequence_length(const Permutation& perm);

/// max_k #{j <= k : pi(j) > pi(k)}
std::size_t level(const Permutation& perm);

/// (min degree, max degree) of the undirected graph.
std::pair<std::size_t, std::size_t> extremal_degrees(const Permutation& perm);

/// #{k : degree(k) = d}; 0 <= d <= n-1.
std::size_t count_vertices_with_degree(const Permutation& perm, std::size_t d);

/// Evaluates any statistic; parameters are validated against perm.size().
BigCount evaluate(const StatisticId& id, const Permutation& perm);

}  // namespace permgraph
