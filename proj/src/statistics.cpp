#include "permgraph/statistics.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "permgraph/fenwick.hpp"
#include "permgraph/graph.hpp"

namespace permgraph {

namespace {

// Fixed-width counter that sticks at the maximum on overflow; a saturated
// result triggers a recount with big integers.
struct SaturatingCount {
  std::uint64_t value = 0;

  SaturatingCount& operator+=(const SaturatingCount& other) {
    if (__builtin_add_overflow(value, other.value, &value)) value = std::numeric_limits<std::uint64_t>::max();
    return *this;
  }
  bool saturated() const { return value == std::numeric_limits<std::uint64_t>::max(); }
};

BigCount to_big(std::uint64_t v) {
  BigCount out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

template <typename T>
T increasing_of_length(const Permutation& perm, std::size_t m) {
  const std::size_t n = perm.size();
  std::vector<T> current(n, T{});
  for (auto& c : current) c += T{1};
  std::vector<T> next(n);
  FenwickTree<T> tree(n);
  for (std::size_t level = 2; level <= m; ++level) {
    tree.clear();
    for (std::size_t j = 1; j <= n; ++j) {
      next[j - 1] = tree.prefix_sum(perm(j) - 1);
      tree.add(perm(j), current[j - 1]);
    }
    std::swap(current, next);
  }
  T total{};
  for (const auto& c : current) total += c;
  return total;
}

// t(j) = 1 + sum_{i<j, pi(i)<pi(j)} t(i); total = 1 + sum_j t(j).
template <typename T>
T total_increasing(const Permutation& perm) {
  const std::size_t n = perm.size();
  FenwickTree<T> tree(n);
  T total{};
  total += T{1};
  for (std::size_t j = 1; j <= n; ++j) {
    T t = tree.prefix_sum(perm(j) - 1);
    t += T{1};
    tree.add(perm(j), t);
    total += t;
  }
  return total;
}

void require_m(std::size_t m, std::size_t n) {
  if (m < 1 || m > n) {
    throw std::out_of_range("subsequence length m=" + std::to_string(m) + " outside 1.." + std::to_string(n));
  }
}

constexpr std::array<std::string_view, 17> kNames = {
    "inversions",   "cliques_m",    "increasing_m",   "cycles_at_least_m", "total_increasing", "lis",
    "level",        "degree_k",     "in_degree_k",    "min_degree",        "max_degree",       "isolated_count",
    "isolated_k",   "isolated_run", "component_count", "degree_d_count",   "common_neighbor",
};

struct Requirement {
  bool m, k, d, i, j;
};

Requirement requirement(StatisticName name) {
  switch (name) {
    case StatisticName::cliques_m:
    case StatisticName::increasing_m:
    case StatisticName::cycles_at_least_m:
      return {true, false, false, false, false};
    case StatisticName::degree_k:
    case StatisticName::in_degree_k:
    case StatisticName::isolated_k:
      return {false, true, false, false, false};
    case StatisticName::degree_d_count:
      return {false, false, true, false, false};
    case StatisticName::isolated_run:
      return {false, true, false, true, false};
    case StatisticName::common_neighbor:
      return {false, false, false, true, true};
    default:
      return {false, false, false, false, false};
  }
}

void check_vertex(long v, std::size_t n, const char* what) {
  if (v < 1 || static_cast<std::size_t>(v) > n) {
    throw std::out_of_range(std::string(what) + "=" + std::to_string(v) + " outside 1.." + std::to_string(n));
  }
}

}  // namespace

std::string_view statistic_name(StatisticName name) { return kNames[static_cast<std::size_t>(name)]; }

StatisticName parse_statistic_name(std::string_view text) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return static_cast<StatisticName>(i);
  }
  throw std::invalid_argument("unknown statistic '" + std::string(text) + "'");
}

std::vector<std::string_view> statistic_names() { return {kNames.begin(), kNames.end()}; }

void StatisticId::validate() const {
  const auto req = requirement(name);
  auto check = [&](bool required, const std::optional<long>& value, const char* flag) {
    if (required && !value) {
      throw std::invalid_argument("statistic " + std::string(statistic_name(name)) + " requires parameter " + flag);
    }
    if (!required && value) {
      throw std::invalid_argument("statistic " + std::string(statistic_name(name)) + " takes no parameter " + flag);
    }
  };
  check(req.m, params.m, "m");
  check(req.k, params.k, "k");
  check(req.d, params.d, "d");
  check(req.i, params.i, "i");
  check(req.j, params.j, "j");
}

void StatisticId::validate_for(std::size_t n) const {
  validate();
  switch (name) {
    case StatisticName::cliques_m:
    case StatisticName::increasing_m:
      check_vertex(*params.m, n, "m");
      break;
    case StatisticName::cycles_at_least_m:
      if (*params.m < 3) throw std::out_of_range("cycles_at_least_m requires m >= 3");
      check_vertex(*params.m, n, "m");
      break;
    case StatisticName::degree_k:
    case StatisticName::in_degree_k:
    case StatisticName::isolated_k:
      check_vertex(*params.k, n, "k");
      break;
    case StatisticName::degree_d_count:
      if (*params.d < 0 || static_cast<std::size_t>(*params.d) >= n) {
        throw std::out_of_range("degree d=" + std::to_string(*params.d) + " outside 0.." + std::to_string(n - 1));
      }
      break;
    case StatisticName::isolated_run:
      check_vertex(*params.i, n, "i");
      if (*params.k < 0 || static_cast<std::size_t>(*params.i + *params.k) > n) {
        throw std::out_of_range("isolated_run needs k >= 0 and i + k <= n");
      }
      break;
    case StatisticName::common_neighbor:
      check_vertex(*params.i, n, "i");
      check_vertex(*params.j, n, "j");
      if (*params.i >= *params.j) throw std::out_of_range("common_neighbor needs i < j");
      break;
    default:
      break;
  }
}

std::string StatisticId::describe() const {
  std::string s(statistic_name(name));
  std::string args;
  auto add = [&](const char* key, const std::optional<long>& v) {
    if (!v) return;
    if (!args.empty()) args += ",";
    args += std::string(key) + "=" + std::to_string(*v);
  };
  add("m", params.m);
  add("k", params.k);
  add("d", params.d);
  add("i", params.i);
  add("j", params.j);
  return args.empty() ? s : s + "(" + args + ")";
}

BigCount count_inversions(const Permutation& perm) {
  const std::size_t n = perm.size();
  FenwickTree<std::uint32_t> seen(n);
  std::uint64_t inv = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    inv += (k - 1) - seen.prefix_sum(perm(k));
    seen.add(perm(k), 1);
  }
  return to_big(inv);
}

BigCount count_increasing_subsequences(const Permutation& perm, std::size_t m) {
  require_m(m, perm.size());
  const auto fast = increasing_of_length<SaturatingCount>(perm, m);
  if (!fast.saturated()) return to_big(fast.value);
  return increasing_of_length<BigCount>(perm, m);
}

BigCount count_m_cliques(const Permutation& perm, std::size_t m) {
  return count_increasing_subsequences(complement(perm), m);
}

BigCount count_cycles_at_least(const Permutation& perm, std::size_t m) {
  if (m < 3) throw std::out_of_range("cycles need length m >= 3");
  return count_m_cliques(perm, m);
}

BigCount count_total_increasing_subsequences(const Permutation& perm) {
  const auto fast = total_increasing<SaturatingCount>(perm);
  if (!fast.saturated()) return to_big(fast.value);
  return total_increasing<BigCount>(perm);
}

std::size_t longest_increasing_subsequence_length(const Permutation& perm) {
  // tails[l] = smallest possible tail of an increasing subsequence of length l+1.
  std::vector<Permutation::value_type> tails;
  for (auto v : perm.values()) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return tails.size();
}

std::size_t longest_decreasing_subsequence_length(const Permutation& perm) {
  return longest_increasing_subsequence_length(complement(perm));
}

std::size_t level(const Permutation& perm) {
  const auto in = DirectedPermutationGraph(perm).in_degree_sequence();
  return *std::max_element(in.begin(), in.end());
}

std::pair<std::size_t, std::size_t> extremal_degrees(const Permutation& perm) {
  const auto deg = PermutationGraph(perm).degree_sequence();
  auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
  return {*lo, *hi};
}

std::size_t count_vertices_with_degree(const Permutation& perm, std::size_t d) {
  if (d >= perm.size()) {
    throw std::out_of_range("degree d=" + std::to_string(d) + " outside 0.." + std::to_string(perm.size() - 1));
  }
  const auto deg = PermutationGraph(perm).degree_sequence();
  return static_cast<std::size_t>(std::count(deg.begin(), deg.end(), d));
}

BigCount evaluate(const StatisticId& id, const Permutation& perm) {
  const std::size_t n = perm.size();
  id.validate_for(n);
  const auto& p = id.params;
  auto u = [](long v) { return static_cast<std::size_t>(v); };
  switch (id.name) {
    case StatisticName::inversions:
      return count_inversions(perm);
    case StatisticName::cliques_m:
      return count_m_cliques(perm, u(*p.m));
    case StatisticName::increasing_m:
      return count_increasing_subsequences(perm, u(*p.m));
    case StatisticName::cycles_at_least_m:
      return count_cycles_at_least(perm, u(*p.m));
    case StatisticName::total_increasing:
      return count_total_increasing_subsequences(perm);
    case StatisticName::lis:
      return to_big(longest_increasing_subsequence_length(perm));
    case StatisticName::level:
      return to_big(level(perm));
    case StatisticName::degree_k:
      return to_big(PermutationGraph(perm).degree(u(*p.k)));
    case StatisticName::in_degree_k:
      return to_big(DirectedPermutationGraph(perm).in_degree(u(*p.k)));
    case StatisticName::min_degree:
      return to_big(extremal_degrees(perm).first);
    case StatisticName::max_degree:
      return to_big(extremal_degrees(perm).second);
    case StatisticName::isolated_count:
      return to_big(PermutationGraph(perm).isolated_vertices().size());
    case StatisticName::isolated_k: {
      const auto iso = PermutationGraph(perm).isolated_vertices();
      return std::binary_search(iso.begin(), iso.end(), u(*p.k)) ? 1 : 0;
    }
    case StatisticName::isolated_run: {
      const auto iso = PermutationGraph(perm).isolated_vertices();
      for (std::size_t v = u(*p.i); v <= u(*p.i + *p.k); ++v) {
        if (!std::binary_search(iso.begin(), iso.end(), v)) return 0;
      }
      return 1;
    }
    case StatisticName::component_count:
      return to_big(PermutationGraph(perm).connected_components(ComponentMethod::prefix_blocks).count);
    case StatisticName::degree_d_count:
      return to_big(count_vertices_with_degree(perm, u(*p.d)));
    case StatisticName::common_neighbor: {
      const PermutationGraph g(perm);
      for (std::size_t k = 1; k <= n; ++k) {
        if (k == u(*p.i) || k == u(*p.j)) continue;
        if (g.adjacent(k, u(*p.i)) && g.adjacent(k, u(*p.j))) return 1;
      }
      return 0;
    }
  }
  throw std::logic_error("unhandled statistic");
}

}  // namespace permgraph
