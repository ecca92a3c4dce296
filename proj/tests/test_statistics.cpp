#include <doctest.h>

#include <cmath>

#include "permgraph/graph.hpp"
#include "permgraph/samplers.hpp"
#include "permgraph/statistics.hpp"
#include "test_util.hpp"

using namespace permgraph;
using permgraph::testing::frac;
using permgraph::testing::for_each_permutation;
using permgraph::testing::perm;

namespace {

// Subsequences of length m by recursion over index choices.
std::uint64_t brute_monotone(const Permutation& p, std::size_t m, bool decreasing, std::size_t start = 1,
                             std::size_t last = 0) {
  if (m == 0) return 1;
  std::uint64_t total = 0;
  for (std::size_t i = start; i <= p.size(); ++i) {
    const bool ok = last == 0 || (decreasing ? p(i) < p(last) : p(i) > p(last));
    if (ok) total += brute_monotone(p, m - 1, decreasing, i + 1, i);
  }
  return total;
}

std::uint64_t brute_all_increasing(const Permutation& p) {
  std::uint64_t total = 0;
  for (std::size_t m = 0; m <= p.size(); ++m) total += brute_monotone(p, m, false);
  return total;
}

StatisticId stat(StatisticName name, StatisticParams params = {}) { return {name, params}; }

}  // namespace

TEST_CASE("inversions") {
  CHECK(count_inversions(Permutation::identity(6)) == 0);
  CHECK(count_inversions(Permutation::decreasing(9)) == 36);
  CHECK(count_inversions(perm({5, 2, 3, 1, 4})) == 6);
}

TEST_CASE("increasing subsequences and cliques") {
  const auto p = perm({5, 2, 3, 1, 4});
  CHECK(count_increasing_subsequences(Permutation::identity(7), 3) == 35);
  CHECK(count_increasing_subsequences(p, 2) == 4);
  CHECK(count_increasing_subsequences(Permutation::decreasing(6), 2) == 0);
  CHECK(count_m_cliques(p, 1) == 5);
  CHECK(count_m_cliques(p, 3) == 2);
  CHECK(count_m_cliques(p, 2) == 6);
  CHECK(count_cycles_at_least(Permutation::identity(5), 3) == 0);
  CHECK(count_cycles_at_least(perm({3, 2, 1}), 3) == 1);
  CHECK(count_cycles_at_least(p, 3) == 2);
  CHECK_THROWS(count_cycles_at_least(p, 2));
  CHECK_THROWS(count_increasing_subsequences(p, 0));
  CHECK_THROWS(count_increasing_subsequences(p, 6));
}

TEST_CASE("subsequence counts beyond 64 bits promote to big integers") {
  // C(200, 20) is about 1.6e27.
  CHECK(count_increasing_subsequences(Permutation::identity(200), 20) == binomial(200, 20));
  CHECK(count_total_increasing_subsequences(Permutation::identity(80)) == BigCount(1) << 80);
}

TEST_CASE("total increasing subsequences") {
  CHECK(count_total_increasing_subsequences(Permutation::identity(3)) == 8);
  CHECK(count_total_increasing_subsequences(perm({3, 2, 1})) == 4);
  BigCount sum = 0;
  for_each_permutation(3, [&](const Permutation& p) { sum += count_total_increasing_subsequences(p); });
  CHECK(frac(sum, 6) == frac(17, 3));
}

TEST_CASE("longest increasing subsequence") {
  CHECK(longest_increasing_subsequence_length(Permutation::identity(9)) == 9);
  CHECK(longest_increasing_subsequence_length(perm({5, 2, 3, 1, 4})) == 3);
  CHECK(longest_increasing_subsequence_length(Permutation::decreasing(9)) == 1);
  CHECK(longest_decreasing_subsequence_length(Permutation::decreasing(9)) == 9);
}

TEST_CASE("level") {
  CHECK(level(perm({3, 4, 1, 5, 2})) == 3);
  CHECK(level(Permutation::identity(6)) == 0);
  CHECK(level(Permutation::decreasing(6)) == 5);
}

TEST_CASE("extremal degrees and degree counts") {
  CHECK(extremal_degrees(Permutation::identity(5)) == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(extremal_degrees(Permutation::decreasing(5)) == std::pair<std::size_t, std::size_t>{4, 4});
  CHECK(extremal_degrees(perm({5, 2, 3, 1, 4})) == std::pair<std::size_t, std::size_t>{1, 4});
  CHECK(count_vertices_with_degree(Permutation::identity(7), 0) == 7);
  CHECK(count_vertices_with_degree(perm({5, 2, 3, 1, 4}), 2) == 2);
}

TEST_CASE("statistic ids") {
  CHECK(parse_statistic_name("cliques_m") == StatisticName::cliques_m);
  CHECK_THROWS_AS(parse_statistic_name("nope"), std::invalid_argument);
  for (auto name : statistic_names()) CHECK(statistic_name(parse_statistic_name(name)) == name);
  CHECK(stat(StatisticName::cliques_m, {.m = 3}).describe() == "cliques_m(m=3)");
  CHECK_THROWS_AS(stat(StatisticName::cliques_m).validate(), std::invalid_argument);
  CHECK_THROWS_AS(stat(StatisticName::inversions, {.k = 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(stat(StatisticName::degree_k, {.k = 6}).validate_for(5), std::out_of_range);
  CHECK_THROWS_AS(stat(StatisticName::cycles_at_least_m, {.m = 2}).validate_for(5), std::out_of_range);
}

TEST_CASE("evaluate dispatches every statistic") {
  const auto p = perm({5, 2, 3, 1, 4});
  CHECK(evaluate(stat(StatisticName::inversions), p) == 6);
  CHECK(evaluate(stat(StatisticName::cliques_m, {.m = 3}), p) == 2);
  CHECK(evaluate(stat(StatisticName::increasing_m, {.m = 2}), p) == 4);
  CHECK(evaluate(stat(StatisticName::cycles_at_least_m, {.m = 3}), p) == 2);
  CHECK(evaluate(stat(StatisticName::total_increasing), Permutation::identity(3)) == 8);
  CHECK(evaluate(stat(StatisticName::lis), p) == 3);
  CHECK(evaluate(stat(StatisticName::level), perm({3, 4, 1, 5, 2})) == 3);
  CHECK(evaluate(stat(StatisticName::degree_k, {.k = 1}), p) == 4);
  CHECK(evaluate(stat(StatisticName::in_degree_k, {.k = 4}), p) == 3);
  CHECK(evaluate(stat(StatisticName::min_degree), p) == 1);
  CHECK(evaluate(stat(StatisticName::max_degree), p) == 4);
  CHECK(evaluate(stat(StatisticName::isolated_count), perm({2, 1, 3})) == 1);
  CHECK(evaluate(stat(StatisticName::isolated_k, {.k = 3}), perm({2, 1, 3})) == 1);
  CHECK(evaluate(stat(StatisticName::isolated_k, {.k = 1}), perm({2, 1, 3})) == 0);
  CHECK(evaluate(stat(StatisticName::isolated_run, {.k = 1, .i = 1}), Permutation::identity(3)) == 1);
  CHECK(evaluate(stat(StatisticName::isolated_run, {.k = 1, .i = 1}), perm({1, 3, 2})) == 0);
  CHECK(evaluate(stat(StatisticName::component_count), perm({2, 1, 4, 3})) == 2);
  CHECK(evaluate(stat(StatisticName::degree_d_count, {.d = 2}), p) == 2);
  CHECK(evaluate(stat(StatisticName::common_neighbor, {.i = 1, .j = 3}), perm({3, 2, 1})) == 1);
  CHECK(evaluate(stat(StatisticName::common_neighbor, {.i = 1, .j = 3}), perm({2, 3, 1})) == 0);
}

TEST_CASE("exhaustive identities on S_7") {
  for (std::size_t n = 1; n <= 7; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      if (n >= 2) REQUIRE(count_m_cliques(p, 2) == count_inversions(p));
      REQUIRE(count_total_increasing_subsequences(p) == brute_all_increasing(p));
      const auto lis = longest_increasing_subsequence_length(p);
      REQUIRE((lis == n) == p.is_identity());
      std::size_t brute_lis = 0;
      for (std::size_t m = 1; m <= n; ++m) {
        if (brute_monotone(p, m, false) > 0) brute_lis = m;
      }
      REQUIRE(lis == brute_lis);
      const auto degrees = PermutationGraph(p).degree_sequence();
      const auto [lo, hi] = extremal_degrees(p);
      REQUIRE(lo == *std::min_element(degrees.begin(), degrees.end()));
      REQUIRE(hi == *std::max_element(degrees.begin(), degrees.end()));
    });
  }
}

TEST_CASE("DP counts agree with recursive enumeration on random instances") {
  Rng rng(RngState{99, 0});
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(12);
    const std::size_t m = 1 + rng.below(std::min<std::size_t>(n, 5));
    const auto p = sample_uniform(n, rng);
    REQUIRE(count_increasing_subsequences(p, m) == brute_monotone(p, m, false));
    REQUIRE(count_m_cliques(p, m) == brute_monotone(p, m, true));
  }
}

TEST_CASE("Erdos-Szekeres bound on random permutations") {
  for (std::size_t r = 0; r < 100; ++r) {
    const auto p = sample_uniform(200, RngState{17, r});
    const auto inc = longest_increasing_subsequence_length(p);
    const auto dec = longest_decreasing_subsequence_length(p);
    CHECK(inc * dec >= 200);
  }
}
