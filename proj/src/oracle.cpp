#include "permgraph/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "permgraph/graph.hpp"

namespace permgraph {

namespace {

using Params = std::map<std::string, long>;

void check_cap(std::size_t n, const EnumerationOptions& options) {
  if (options.cap > kMaxEnumerationCap) {
    throw std::out_of_range("enumeration cap cannot exceed " + std::to_string(kMaxEnumerationCap));
  }
  if (n < 1) throw std::out_of_range("enumeration needs n >= 1");
  if (n > options.cap) {
    throw std::out_of_range("n=" + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(options.cap));
  }
}

std::uint64_t factorial64(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

using Tally = std::map<BigCount, std::uint64_t>;

Tally tally_block(std::size_t n, std::uint64_t first, std::uint64_t count,
                  const std::function<BigCount(const Permutation&)>& fn) {
  Tally tally;
  if (count == 0) return tally;
  const auto start = lexicographic_unrank(n, first);
  std::vector<Permutation::value_type> current(start.values().begin(), start.values().end());
  for (std::uint64_t step = 0; step < count; ++step) {
    ++tally[fn(Permutation::from_trusted(current))];
    std::next_permutation(current.begin(), current.end());
  }
  return tally;
}

}  // namespace

DistributionTable enumerate_function(std::size_t n, const StatisticId& label,
                                     const std::function<BigCount(const Permutation&)>& fn,
                                     const EnumerationOptions& options) {
  check_cap(n, options);
  const std::uint64_t total = factorial64(n);
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(total)));

  std::vector<Tally> partial(threads);
  if (threads == 1) {
    partial[0] = tally_block(n, 0, total, fn);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = total * t / threads;
      const std::uint64_t end = total * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] {
        try {
          partial[t] = tally_block(n, begin, end - begin, fn);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  DistributionTable table;
  table.n = n;
  table.statistic = label;
  table.total = 0;
  for (const auto& tally : partial) {
    for (const auto& [value, count] : tally) {
      table.entries[value] += static_cast<unsigned long>(count);
      table.total += static_cast<unsigned long>(count);
    }
  }
  return table;
}

DistributionTable enumerate_distribution(std::size_t n, const StatisticId& statistic,
                                         const EnumerationOptions& options) {
  statistic.validate_for(n);
  return enumerate_function(
      n, statistic, [&statistic](const Permutation& p) { return evaluate(statistic, p); }, options);
}

ExactMoments distribution_moments(const DistributionTable& table) {
  if (table.entries.empty() || table.total == 0) throw std::invalid_argument("empty distribution table");
  BigCount sum = 0;
  BigCount sum_sq = 0;
  for (const auto& [value, count] : table.entries) {
    sum += value * count;
    sum_sq += value * value * count;
  }
  ExactMoments m;
  m.mean = make_rational(sum, table.total);
  m.second_moment = make_rational(sum_sq, table.total);
  m.variance = m.second_moment - m.mean * m.mean;
  return m;
}

DistributionTable map_values(const DistributionTable& table, const std::function<BigCount(const BigCount&)>& f) {
  DistributionTable out;
  out.n = table.n;
  out.statistic = table.statistic;
  out.total = table.total;
  for (const auto& [value, count] : table.entries) out.entries[f(value)] += count;
  return out;
}

BigCount brute_force_subsequence_count(const Permutation& perm, std::size_t m, bool decreasing) {
  const std::size_t n = perm.size();
  if (n > 14 || m > 6) throw std::out_of_range("brute force limited to n <= 14 and m <= 6");
  if (m < 1 || m > n) throw std::out_of_range("subsequence length outside 1..n");
  std::vector<std::size_t> idx(m);
  for (std::size_t t = 0; t < m; ++t) idx[t] = t;
  std::uint64_t count = 0;
  while (true) {
    bool monotone = true;
    for (std::size_t t = 0; t + 1 < m && monotone; ++t) {
      const auto a = perm.values()[idx[t]];
      const auto b = perm.values()[idx[t + 1]];
      monotone = decreasing ? a > b : a < b;
    }
    count += monotone;
    // Advance to the next m-subset of {0..n-1} in lexicographic order.
    std::size_t t = m;
    while (t > 0 && idx[t - 1] == n - m + t - 1) --t;
    if (t == 0) break;
    ++idx[t - 1];
    for (std::size_t u = t; u < m; ++u) idx[u] = idx[u - 1] + 1;
  }
  return static_cast<unsigned long>(count);
}

BigCount brute_force_simple_cycles(const Permutation& perm, std::size_t min_len) {
  const std::size_t n = perm.size();
  if (n > 8) throw std::out_of_range("simple-cycle brute force limited to n <= 8");
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (perm.values()[i] > perm.values()[j]) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
    }
  }
  const std::size_t need = std::max<std::size_t>(min_len, 3);
  std::uint64_t directed = 0;
  // Each cycle is rooted at its smallest vertex and found once per direction.
  for (std::size_t root = 0; root < n; ++root) {
    std::function<void(std::size_t, std::uint32_t, std::size_t)> dfs = [&](std::size_t v, std::uint32_t used,
                                                                           std::size_t len) {
      for (std::size_t w = root; w < n; ++w) {
        if (!(adj[v] >> w & 1u)) continue;
        if (w == root) {
          if (len >= need) ++directed;
        } else if (!(used >> w & 1u)) {
          dfs(w, used | (1u << w), len + 1);
        }
      }
    };
    dfs(root, 1u << root, 1);
  }
  return static_cast<unsigned long>(directed / 2);
}

std::string_view verdict_name(Verdict v) { return v == Verdict::match ? "match" : "mismatch"; }

const VariantVerdict& ArbitrationReport::variant(std::string_view name) const {
  for (const auto& v : variants) {
    if (v.variant == name) return v;
  }
  throw std::out_of_range("report has no variant '" + std::string(name) + "'");
}

// ---- arbitration registry ----------------------------------------------------

namespace {

enum class Moment { mean, variance, second_moment };

struct FormulaEntry {
  std::string id;
  std::vector<std::string> variants;
  std::function<std::vector<Params>(std::size_t n)> grid;
  bool numeric = false;
  // Exact formulas.
  std::function<Rational(std::size_t n, const Params&, std::size_t variant)> exact;
  std::function<StatisticId(const Params&)> statistic;
  Moment moment = Moment::mean;
  // Numeric formulas: formula value and oracle probability.
  std::function<double(std::size_t n, const Params&, std::size_t variant)> numeric_value;
};

std::vector<Params> no_params(std::size_t) { return {Params{}}; }

std::vector<Params> each_k(std::size_t n) {
  std::vector<Params> out;
  for (long k = 1; k <= static_cast<long>(n); ++k) out.push_back({{"k", k}});
  return out;
}

std::vector<Params> m_up_to_4(std::size_t n) {
  std::vector<Params> out;
  for (long m = 1; m <= std::min<long>(4, static_cast<long>(n)); ++m) out.push_back({{"m", m}});
  return out;
}

std::vector<Params> runs(std::size_t n) {
  std::vector<Params> out;
  for (long i = 1; i <= static_cast<long>(n); ++i) {
    for (long k = 0; i + k <= static_cast<long>(n); ++k) out.push_back({{"i", i}, {"k", k}});
  }
  return out;
}

std::vector<Params> pairs(std::size_t n) {
  std::vector<Params> out;
  for (long i = 1; i <= static_cast<long>(n); ++i) {
    for (long j = i + 1; j <= static_cast<long>(n); ++j) out.push_back({{"i", i}, {"j", j}});
  }
  return out;
}

FormulaVariant variant_at(std::size_t index) { return index == 0 ? FormulaVariant::as_printed : FormulaVariant::corrected; }

StatisticId stat(StatisticName name, StatisticParams params = {}) { return StatisticId{name, params}; }

std::uint64_t p(const Params& params, const char* key) { return static_cast<std::uint64_t>(params.at(key)); }

const std::vector<FormulaEntry>& registry() {
  static const std::vector<FormulaEntry> entries = [] {
    const std::vector<std::string> both = {"as_printed", "corrected"};
    const std::vector<std::string> single = {"as_printed"};
    std::vector<FormulaEntry> e;

    e.push_back({"expected_cliques", single, m_up_to_4, false,
                 [](std::size_t n, const Params& q, std::size_t) { return expected_cliques(n, p(q, "m")); },
                 [](const Params& q) { return stat(StatisticName::cliques_m, {.m = q.at("m")}); }, Moment::mean, {}});
    e.push_back({"second_moment_cliques", single, m_up_to_4, false,
                 [](std::size_t n, const Params& q, std::size_t) { return second_moment_cliques(n, p(q, "m")); },
                 [](const Params& q) { return stat(StatisticName::cliques_m, {.m = q.at("m")}); },
                 Moment::second_moment, {}});
    e.push_back({"inversion_mean", both, no_params, false,
                 [](std::size_t n, const Params&, std::size_t v) { return inversion_moments(n, variant_at(v)).mean; },
                 [](const Params&) { return stat(StatisticName::inversions); }, Moment::mean, {}});
    e.push_back({"inversion_variance", single, no_params, false,
                 [](std::size_t n, const Params&, std::size_t v) {
                   return inversion_moments(n, variant_at(v)).variance;
                 },
                 [](const Params&) { return stat(StatisticName::inversions); }, Moment::variance, {}});
    e.push_back({"degree_mean", single, each_k, false,
                 [](std::size_t n, const Params& q, std::size_t v) {
                   return degree_moments(n, p(q, "k"), variant_at(v)).mean;
                 },
                 [](const Params& q) { return stat(StatisticName::degree_k, {.k = q.at("k")}); }, Moment::mean, {}});
    e.push_back({"degree_variance", both, each_k, false,
                 [](std::size_t n, const Params& q, std::size_t v) {
                   return degree_moments(n, p(q, "k"), variant_at(v)).variance;
                 },
                 [](const Params& q) { return stat(StatisticName::degree_k, {.k = q.at("k")}); }, Moment::variance,
                 {}});
    e.push_back({"isolated_probability", both, each_k, false,
                 [](std::size_t n, const Params& q, std::size_t v) {
                   return isolated_vertex_probability(n, p(q, "k"), variant_at(v));
                 },
                 [](const Params& q) { return stat(StatisticName::isolated_k, {.k = q.at("k")}); }, Moment::mean,
                 {}});
    e.push_back({"expected_isolated", both, no_params, false,
                 [](std::size_t n, const Params&, std::size_t v) { return expected_isolated(n, variant_at(v)); },
                 [](const Params&) { return stat(StatisticName::isolated_count); }, Moment::mean, {}});
    e.push_back({"consecutive_isolated", both, runs, false,
                 [](std::size_t n, const Params& q, std::size_t v) {
                   return consecutive_isolated_probability(n, p(q, "i"), p(q, "k"), variant_at(v));
                 },
                 [](const Params& q) { return stat(StatisticName::isolated_run, {.k = q.at("k"), .i = q.at("i")}); },
                 Moment::mean, {}});
    e.push_back({"level_mean", both, no_params, false,
                 [](std::size_t n, const Params&, std::size_t v) { return level_moments(n, variant_at(v)).mean; },
                 [](const Params&) { return stat(StatisticName::level); }, Moment::mean, {}});
    e.push_back({"level_variance", both, no_params, false,
                 [](std::size_t n, const Params&, std::size_t v) { return level_moments(n, variant_at(v)).variance; },
                 [](const Params&) { return stat(StatisticName::level); }, Moment::variance, {}});
    e.push_back({"total_cycle_mean", single, no_params, false,
                 [](std::size_t n, const Params&, std::size_t) { return total_cycle_moments(n).mean; },
                 [](const Params&) { return stat(StatisticName::total_increasing); }, Moment::mean, {}});
    e.push_back({"total_cycle_second_moment", single, no_params, false,
                 [](std::size_t n, const Params&, std::size_t) { return total_cycle_moments(n).second_moment; },
                 [](const Params&) { return stat(StatisticName::total_increasing); }, Moment::second_moment, {}});
    e.push_back({"common_neighbor", {"as_printed", "as_printed_integral", "corrected_integral"}, pairs, true, {},
                 [](const Params& q) {
                   return stat(StatisticName::common_neighbor, {.i = q.at("i"), .j = q.at("j")});
                 },
                 Moment::mean,
                 [](std::size_t n, const Params& q, std::size_t v) {
                   const auto r = common_neighbor_probability(n, p(q, "i"), p(q, "j"));
                   return v == 0 ? r.p_printed : v == 1 ? r.p_complement_integral : r.p_complement_integral_corrected;
                 }});
    return e;
  }();
  return entries;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<std::string> registered_formulas() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.id);
  return out;
}

ArbitrationReport arbitrate_formula(const std::string& formula, std::size_t n_min, std::size_t n_max,
                                    const EnumerationOptions& options) {
  const auto& entries = registry();
  auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.id == formula; });
  if (it == entries.end()) throw std::invalid_argument("unregistered formula '" + formula + "'");
  if (n_min < 1 || n_min > n_max) throw std::out_of_range("arbitration needs 1 <= n_min <= n_max");
  check_cap(n_max, options);
  const FormulaEntry& entry = *it;

  ArbitrationReport report;
  report.formula = formula;
  report.n_min = n_min;
  report.n_max = n_max;
  report.numeric_only = entry.numeric;
  report.tolerance = entry.numeric ? kNumericArbitrationTolerance : 0.0;
  for (const auto& name : entry.variants) report.variants.push_back({name, Verdict::match, 0, std::nullopt});

  for (std::size_t n = n_min; n <= n_max; ++n) {
    for (const auto& params : entry.grid(n)) {
      const auto id = entry.statistic(params);
      const auto moments = distribution_moments(enumerate_distribution(n, id, options));
      const Rational& oracle = entry.moment == Moment::mean       ? moments.mean
                               : entry.moment == Moment::variance ? moments.variance
                                                                  : moments.second_moment;
      for (std::size_t v = 0; v < report.variants.size(); ++v) {
        auto& verdict = report.variants[v];
        ++verdict.points_tested;
        bool agree = false;
        std::string formula_value;
        std::string oracle_value;
        if (entry.numeric) {
          const double value = entry.numeric_value(n, params, v);
          const double truth = to_double(oracle);
          agree = std::abs(value - truth) <= report.tolerance;
          formula_value = format_double(value);
          oracle_value = to_string(oracle);
        } else {
          const Rational value = entry.exact(n, params, v);
          agree = value == oracle;
          formula_value = to_string(value);
          oracle_value = to_string(oracle);
        }
        if (!agree && verdict.verdict == Verdict::match) {
          verdict.verdict = Verdict::mismatch;
          verdict.counterexample = Counterexample{n, params, formula_value, oracle_value};
        }
      }
    }
  }
  return report;
}

// ---- JSON --------------------------------------------------------------------

nlohmann::ordered_json to_json(const StatisticId& id) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (id.params.m) params["m"] = *id.params.m;
  if (id.params.k) params["k"] = *id.params.k;
  if (id.params.d) params["d"] = *id.params.d;
  if (id.params.i) params["i"] = *id.params.i;
  if (id.params.j) params["j"] = *id.params.j;
  return {{"name", statistic_name(id.name)}, {"params", params}};
}

nlohmann::ordered_json to_json(const DistributionTable& table, bool with_moments) {
  nlohmann::ordered_json j;
  j["n"] = table.n;
  j["statistic"] = statistic_name(table.statistic.name);
  j["params"] = to_json(table.statistic)["params"];
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  for (const auto& [value, count] : table.entries) entries[to_string(value)] = to_string(count);
  j["entries"] = entries;
  j["total"] = to_string(table.total);
  if (with_moments) {
    const auto m = distribution_moments(table);
    j["moments"] = {{"mean", to_string(m.mean)},
                    {"variance", to_string(m.variance)},
                    {"second_moment", to_string(m.second_moment)}};
  }
  return j;
}

nlohmann::ordered_json to_json(const ArbitrationReport& report) {
  nlohmann::ordered_json j;
  j["formula"] = report.formula;
  j["n_range"] = {report.n_min, report.n_max};
  j["numeric_only"] = report.numeric_only;
  if (report.numeric_only) j["tolerance"] = report.tolerance;
  nlohmann::ordered_json variants = nlohmann::ordered_json::array();
  for (const auto& v : report.variants) {
    nlohmann::ordered_json item;
    item["variant"] = v.variant;
    item["verdict"] = verdict_name(v.verdict);
    item["points_tested"] = v.points_tested;
    if (v.counterexample) {
      nlohmann::ordered_json params = nlohmann::ordered_json::object();
      for (const auto& [key, value] : v.counterexample->params) params[key] = value;
      item["counterexample"] = {{"n", v.counterexample->n},
                                {"params", params},
                                {"formula_value", v.counterexample->formula_value},
                                {"oracle_value", v.counterexample->oracle_value}};
    } else {
      item["counterexample"] = nullptr;
    }
    variants.push_back(item);
  }
  j["variants"] = variants;
  return j;
}

}  // namespace permgraph
