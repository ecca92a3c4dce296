#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "permgraph/closed_form.hpp"
#include "permgraph/numeric.hpp"
#include "permgraph/permutation.hpp"
#include "permgraph/statistics.hpp"

namespace permgraph {

inline constexpr std::size_t kDefaultEnumerationCap = 9;
inline constexpr std::size_t kMaxEnumerationCap = 10;

struct EnumerationOptions {
  std::size_t cap = kDefaultEnumerationCap;  // raise to 10 explicitly
  unsigned threads = 1;
};

/// Exact law of a statistic over all of S_n.
struct DistributionTable {
  std::size_t n = 0;
  StatisticId statistic;
  std::map<BigCount, BigCount> entries;  // value -> number of permutations
  BigCount total;

  friend bool operator==(const DistributionTable&, const DistributionTable&) = default;
};

struct ExactMoments {
  Rational mean;
  Rational variance;
  Rational second_moment;
};

/// Visits every permutation of S_n once in lexicographic order (split into
/// contiguous rank blocks when threads > 1) and tallies `statistic`.
DistributionTable enumerate_distribution(std::size_t n, const StatisticId& statistic,
                                         const EnumerationOptions& options = {});

/// Same, for an arbitrary integer-valued function of the permutation. The
/// returned table carries `label` as its statistic.
DistributionTable enumerate_function(std::size_t n, const StatisticId& label,
                                     const std::function<BigCount(const Permutation&)>& fn,
                                     const EnumerationOptions& options = {});

ExactMoments distribution_moments(const DistributionTable& table);

/// Table of f(value) for a value map f (e.g. v -> n-1-v).
DistributionTable map_values(const DistributionTable& table, const std::function<BigCount(const BigCount&)>& f);

/// Direct enumeration of all C(n, m) index tuples; n <= 14, m <= 6.
BigCount brute_force_subsequence_count(const Permutation& perm, std::size_t m, bool decreasing = false);

/// Simple cycles of length >= min_len in the undirected permutation graph, each
/// counted once; n <= 8.
BigCount brute_force_simple_cycles(const Permutation& perm, std::size_t min_len);

enum class Verdict { match, mismatch };

struct Counterexample {
  std::size_t n = 0;
  std::map<std::string, long> params;
  std::string formula_value;
  std::string oracle_value;
};

struct VariantVerdict {
  std::string variant;
  Verdict verdict = Verdict::match;
  std::size_t points_tested = 0;
  std::optional<Counterexample> counterexample;
};

/// Outcome of comparing a closed form to exhaustive enumeration. A "match"
/// means exact rational equality at every tested point (or, for numeric-only
/// formulas, agreement within `tolerance`).
struct ArbitrationReport {
  std::string formula;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  bool numeric_only = false;
  double tolerance = 0.0;
  std::vector<VariantVerdict> variants;

  const VariantVerdict& variant(std::string_view name) const;
};

std::vector<std::string> registered_formulas();

/// Throws std::invalid_argument for unknown formulas; n_max must not exceed options.cap.
ArbitrationReport arbitrate_formula(const std::string& formula, std::size_t n_min, std::size_t n_max,
                                    const EnumerationOptions& options = {});

inline constexpr double kNumericArbitrationTolerance = 1e-6;

std::string_view verdict_name(Verdict v);

nlohmann::ordered_json to_json(const StatisticId& id);
nlohmann::ordered_json to_json(const DistributionTable& table, bool with_moments = true);
nlohmann::ordered_json to_json(const ArbitrationReport& report);

}  // namespace permgraph
