#include "permgraph/mc.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "permgraph/closed_form.hpp"

namespace permgraph {

// ---- samplers ----------------------------------------------------------------

Permutation SamplerSpec::draw(std::size_t n, Rng& rng) const {
  switch (kind) {
    case SamplerKind::uniform:
      return sample_uniform(n, rng);
    case SamplerKind::riffle:
      return sample_riffle_inverse(n, piles, rng).permutation;
    case SamplerKind::unfair:
      return sample_unfair(n, phi, rng);
  }
  throw std::logic_error("unhandled sampler");
}

std::string SamplerSpec::describe() const {
  switch (kind) {
    case SamplerKind::uniform:
      return "uniform";
    case SamplerKind::riffle:
      return "riffle";
    case SamplerKind::unfair:
      return "unfair";
  }
  return {};
}

// ---- reference laws ------------------------------------------------------------

namespace {

constexpr std::size_t kMixtureGridPoints = 2048;
constexpr double kMixtureGridHalfWidth = 4.0;  // sd <= 1/2, so F(-4) < 1e-15

struct MixtureGrid {
  double step;
  std::vector<double> cdf;
  std::vector<double> pdf;

  MixtureGrid() : step(2.0 * kMixtureGridHalfWidth / (kMixtureGridPoints - 1)) {
    cdf.resize(kMixtureGridPoints);
    pdf.resize(kMixtureGridPoints);
    for (std::size_t i = 0; i < kMixtureGridPoints; ++i) {
      const double x = -kMixtureGridHalfWidth + step * static_cast<double>(i);
      cdf[i] = mixture_normal_cdf(x);
      pdf[i] = mixture_normal_pdf(x);
    }
    // Enforce monotone nodes against quadrature noise.
    for (std::size_t i = 1; i < kMixtureGridPoints; ++i) cdf[i] = std::max(cdf[i], cdf[i - 1]);
  }
};

const MixtureGrid& mixture_grid() {
  static const MixtureGrid grid;
  return grid;
}

}  // namespace

double mixture_normal_cdf_cached(double alpha) {
  const auto& g = mixture_grid();
  if (alpha <= -kMixtureGridHalfWidth) return 0.0;
  if (alpha >= kMixtureGridHalfWidth) return 1.0;
  const double pos = (alpha + kMixtureGridHalfWidth) / g.step;
  auto i = static_cast<std::size_t>(pos);
  if (i >= kMixtureGridPoints - 1) i = kMixtureGridPoints - 2;
  const double t = pos - static_cast<double>(i);
  // Cubic Hermite with exact derivatives (the density) at the nodes.
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  const double value =
      h00 * g.cdf[i] + h10 * g.step * g.pdf[i] + h01 * g.cdf[i + 1] + h11 * g.step * g.pdf[i + 1];
  return std::clamp(value, g.cdf[i], g.cdf[i + 1]);
}

ReferenceLaw ReferenceLaw::uniform_scaled(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform_scaled needs a < b");
  return ReferenceLaw(Kind::uniform_scaled, a, b);
}

ReferenceLaw ReferenceLaw::parse(const std::string& text) {
  if (text == "standard_normal" || text == "normal") return standard_normal();
  if (text == "rayleigh" || text == "rayleigh_half_sqrt2") return rayleigh();
  if (text == "mixture_normal" || text == "mixture") return mixture_normal();
  if (text == "uniform_sqrt3") return uniform_scaled(-std::sqrt(3.0), std::sqrt(3.0));
  const std::string prefix = "uniform_scaled(";
  if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    const auto comma = inner.find(',');
    if (comma != std::string::npos) {
      try {
        return uniform_scaled(std::stod(inner.substr(0, comma)), std::stod(inner.substr(comma + 1)));
      } catch (const std::logic_error&) {
      }
    }
  }
  throw std::invalid_argument("unknown reference law '" + text + "'");
}

double ReferenceLaw::cdf(double x) const {
  switch (kind_) {
    case Kind::standard_normal:
      return standard_normal_cdf(x);
    case Kind::rayleigh_half_sqrt2:
      return x <= 0.0 ? 0.0 : 1.0 - rayleigh_tail(x);
    case Kind::mixture_normal:
      return mixture_normal_cdf_cached(x);
    case Kind::uniform_scaled:
      return std::clamp((x - a_) / (b_ - a_), 0.0, 1.0);
  }
  return 0.0;
}

std::string ReferenceLaw::name() const {
  switch (kind_) {
    case Kind::standard_normal:
      return "standard_normal";
    case Kind::rayleigh_half_sqrt2:
      return "rayleigh";
    case Kind::mixture_normal:
      return "mixture_normal";
    case Kind::uniform_scaled: {
      char buf[96];
      std::snprintf(buf, sizeof buf, "uniform_scaled(%.17g,%.17g)", a_, b_);
      return buf;
    }
  }
  return {};
}

double ks_distance(std::span<const double> samples, const ReferenceLaw& law) {
  if (samples.empty()) throw std::invalid_argument("KS distance needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  // Within a run of ties the first element bounds F from above, the last from below.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = law.cdf(sorted[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  return d;
}

// ---- histogram -------------------------------------------------------------------

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

constexpr std::size_t kMaxBins = 10'000;

}  // namespace

Histogram make_histogram(std::span<const double> samples, std::optional<std::size_t> bins) {
  if (samples.empty()) throw std::invalid_argument("histogram needs samples");
  if (bins && *bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  double lo = sorted.front();
  double hi = sorted.back();
  std::size_t count = 1;
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
    count = bins.value_or(1);
  } else if (bins) {
    count = *bins;
  } else {
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double n = static_cast<double>(sorted.size());
    if (iqr > 0.0) {
      const double width = 2.0 * iqr / std::cbrt(n);
      count = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    } else {
      count = static_cast<std::size_t>(std::ceil(std::log2(n))) + 1;  // Sturges fallback
    }
    count = std::clamp<std::size_t>(count, 1, kMaxBins);
  }
  Histogram h;
  h.edges.resize(count + 1);
  const double width = (hi - lo) / static_cast<double>(count);
  for (std::size_t i = 0; i <= count; ++i) h.edges[i] = lo + width * static_cast<double>(i);
  h.edges.back() = hi;
  h.counts.assign(count, 0);
  for (double x : sorted) {
    auto bin = static_cast<std::size_t>((x - lo) / width);
    if (bin >= count) bin = count - 1;
    ++h.counts[bin];
  }
  return h;
}

// ---- Monte Carlo -------------------------------------------------------------------

void MCConfig::validate() const {
  if (n < 1) throw std::out_of_range("n must be >= 1");
  if (replications < 1) throw std::out_of_range("replications must be >= 1");
  statistic.validate_for(n);
  if (normalization && !(normalization->scale > 0.0)) throw std::out_of_range("normalization scale must be > 0");
  if (sampler.kind == SamplerKind::riffle) sampler.piles.validate();
  if (sampler.kind == SamplerKind::unfair) sampler.phi.require_defined_up_to(n);
  if (bins && *bins == 0) throw std::out_of_range("bins must be >= 1");
}

std::vector<double> simulate(const MCConfig& config, unsigned threads) {
  config.validate();
  std::vector<double> values(config.replications);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      Rng rng(RngState{config.seed, r});
      const auto perm = config.sampler.draw(config.n, rng);
      double v = evaluate(config.statistic, perm).get_d();
      if (config.normalization) v = (v - config.normalization->center) / config.normalization->scale;
      values[r] = v;
    }
  };
  const std::size_t reps = config.replications;
  const unsigned t_count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::size_t>(reps, 1024))));
  if (t_count == 1) {
    work(0, reps);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(t_count);
    for (unsigned t = 0; t < t_count; ++t) {
      const std::size_t begin = reps * t / t_count;
      const std::size_t end = reps * (t + 1) / t_count;
      workers.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
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
  return values;
}

MCReport run_mc(const MCConfig& config, const ExecutionOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  auto values = simulate(config, options.threads);

  MCReport report;
  report.config = config;
  report.generator = std::string(Rng::kGeneratorId);
  // Fixed summation order (replicate index) keeps the floating-point result thread-invariant.
  double sum = 0.0;
  for (double v : values) sum += v;
  report.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - report.mean) * (v - report.mean);
  report.variance = values.size() > 1 ? ss / static_cast<double>(values.size() - 1) : 0.0;
  report.histogram = make_histogram(values, config.bins);
  for (const auto& law : config.ks_laws) report.ks.emplace_back(law.name(), ks_distance(values, law));
  if (options.timing) {
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }
  if (options.keep_samples) report.samples = std::move(values);
  return report;
}

DiagnosisReport limit_law_diagnosis(const MCConfig& config, const std::vector<ReferenceLaw>& candidates,
                                    const ExecutionOptions& options, std::string preset) {
  if (candidates.empty()) throw std::invalid_argument("diagnosis needs at least one candidate law");
  MCConfig run_config = config;
  run_config.ks_laws = candidates;
  DiagnosisReport out;
  out.preset = std::move(preset);
  out.run = run_mc(run_config, options);
  for (const auto& [law, ks] : out.run.ks) out.ranking.push_back({law, ks});
  std::stable_sort(out.ranking.begin(), out.ranking.end(), [](const auto& a, const auto& b) { return a.ks < b.ks; });
  return out;
}

DiagnosisPreset parse_preset(std::string_view text) {
  if (text == "midnode") return DiagnosisPreset::midnode;
  if (text == "midnode_printed") return DiagnosisPreset::midnode_printed;
  if (text == "extremal") return DiagnosisPreset::extremal;
  if (text == "smallk") return DiagnosisPreset::smallk;
  throw std::invalid_argument("unknown diagnosis preset '" + std::string(text) + "'");
}

std::string_view preset_name(DiagnosisPreset preset) {
  switch (preset) {
    case DiagnosisPreset::midnode:
      return "midnode";
    case DiagnosisPreset::midnode_printed:
      return "midnode_printed";
    case DiagnosisPreset::extremal:
      return "extremal";
    case DiagnosisPreset::smallk:
      return "smallk";
  }
  return {};
}

std::pair<MCConfig, std::vector<ReferenceLaw>> diagnosis_preset(DiagnosisPreset preset, std::size_t n,
                                                                std::size_t reps, std::uint64_t seed) {
  if (n < 2) throw std::out_of_range("diagnosis presets need n >= 2");
  MCConfig config;
  config.n = n;
  config.replications = reps;
  config.seed = seed;
  const double nd = static_cast<double>(n);
  std::vector<ReferenceLaw> laws;
  switch (preset) {
    case DiagnosisPreset::midnode:
    case DiagnosisPreset::midnode_printed:
      config.statistic = {StatisticName::degree_k, {.k = static_cast<long>(n / 2)}};
      config.normalization =
          Normalization{nd / 2.0, (preset == DiagnosisPreset::midnode ? 1.0 : 2.0) * std::sqrt(nd)};
      laws = {ReferenceLaw::mixture_normal(), ReferenceLaw::standard_normal()};
      break;
    case DiagnosisPreset::extremal:
      config.statistic = {StatisticName::min_degree, {}};
      config.normalization = Normalization{0.0, std::sqrt(nd)};
      laws = {ReferenceLaw::rayleigh()};
      break;
    case DiagnosisPreset::smallk:
      config.statistic = {StatisticName::degree_k, {.k = 1}};
      config.normalization = Normalization{nd / 2.0, nd / std::sqrt(12.0)};
      laws = {ReferenceLaw::uniform_scaled(-std::sqrt(3.0), std::sqrt(3.0)), ReferenceLaw::standard_normal()};
      break;
  }
  return {config, laws};
}

// ---- chi-square ----------------------------------------------------------------------

double chi_square_upper_tail(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

namespace {

constexpr std::size_t kMaxTabulatedN = 6;

std::size_t table_size(std::size_t n) {
  if (n < 1 || n > kMaxTabulatedN) throw std::out_of_range("S_n tabulation limited to 1 <= n <= 6");
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ChiSquareReport sampler_equivalence_test(std::size_t n, const PileSpec& piles, std::size_t reps, std::uint64_t seed,
                                         unsigned threads) {
  const std::size_t cells = table_size(n);
  piles.validate();
  if (reps < 1) throw std::out_of_range("reps must be >= 1");
  std::vector<std::uint64_t> first(cells, 0);
  std::vector<std::uint64_t> second(cells, 0);
  std::vector<std::size_t> rank_a(reps), rank_b(reps);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      rank_a[r] = lexicographic_rank(sample_riffle_piles(n, piles, RngState{seed, r}));
      rank_b[r] = lexicographic_rank(sample_riffle_inverse(n, piles, RngState{seed, reps + r}).permutation);
    }
  };
  const unsigned t_count = std::max(1u, std::min<unsigned>(threads, 64));
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < t_count; ++t) workers.emplace_back(work, reps * t / t_count, reps * (t + 1) / t_count);
  for (auto& w : workers) w.join();
  for (std::size_t r = 0; r < reps; ++r) {
    ++first[rank_a[r]];
    ++second[rank_b[r]];
  }

  ChiSquareReport out;
  out.n = n;
  out.reps = reps;
  const double total = 2.0 * static_cast<double>(reps);
  for (std::size_t c = 0; c < cells; ++c) {
    const double column = static_cast<double>(first[c] + second[c]);
    if (column == 0.0) continue;
    ++out.categories;
    for (double observed : {static_cast<double>(first[c]), static_cast<double>(second[c])}) {
      const double expected = column * static_cast<double>(reps) / total;
      out.statistic += (observed - expected) * (observed - expected) / expected;
    }
  }
  out.degrees_of_freedom = out.categories > 0 ? out.categories - 1 : 0;
  out.p_value = chi_square_upper_tail(out.statistic, out.degrees_of_freedom);
  return out;
}

ChiSquareReport uniformity_test(std::size_t n, const SamplerSpec& sampler, std::size_t reps, std::uint64_t seed) {
  const std::size_t cells = table_size(n);
  if (reps < 1) throw std::out_of_range("reps must be >= 1");
  std::vector<std::uint64_t> counts(cells, 0);
  for (std::size_t r = 0; r < reps; ++r) {
    Rng rng(RngState{seed, r});
    ++counts[lexicographic_rank(sampler.draw(n, rng))];
  }
  ChiSquareReport out;
  out.n = n;
  out.reps = reps;
  out.categories = cells;
  const double expected = static_cast<double>(reps) / static_cast<double>(cells);
  for (auto c : counts) out.statistic += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  out.degrees_of_freedom = cells - 1;
  out.p_value = chi_square_upper_tail(out.statistic, out.degrees_of_freedom);
  return out;
}

// ---- JSON ------------------------------------------------------------------------------

nlohmann::ordered_json to_json(const MCConfig& config) {
  nlohmann::ordered_json j;
  j["n"] = config.n;
  j["replications"] = config.replications;
  nlohmann::ordered_json sampler;
  sampler["kind"] = config.sampler.describe();
  if (config.sampler.kind == SamplerKind::riffle) sampler["p"] = config.sampler.piles.p;
  if (config.sampler.kind == SamplerKind::unfair) sampler["phi"] = config.sampler.phi.describe();
  j["sampler"] = sampler;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  const auto& p = config.statistic.params;
  if (p.m) params["m"] = *p.m;
  if (p.k) params["k"] = *p.k;
  if (p.d) params["d"] = *p.d;
  if (p.i) params["i"] = *p.i;
  if (p.j) params["j"] = *p.j;
  j["statistic"] = {{"name", statistic_name(config.statistic.name)}, {"params", params}};
  j["seed"] = config.seed;
  if (config.normalization) {
    j["normalization"] = {{"center", config.normalization->center}, {"scale", config.normalization->scale}};
  } else {
    j["normalization"] = nullptr;
  }
  nlohmann::ordered_json laws = nlohmann::ordered_json::array();
  for (const auto& law : config.ks_laws) laws.push_back(law.name());
  j["ks_laws"] = laws;
  if (config.bins) {
    j["bins"] = *config.bins;
  } else {
    j["bins"] = "freedman_diaconis";
  }
  return j;
}

nlohmann::ordered_json to_json(const MCReport& report) {
  nlohmann::ordered_json j;
  j["config"] = to_json(report.config);
  j["mean"] = report.mean;
  j["variance"] = report.variance;
  j["histogram"] = {{"edges", report.histogram.edges}, {"counts", report.histogram.counts}};
  nlohmann::ordered_json ks = nlohmann::ordered_json::object();
  for (const auto& [law, d] : report.ks) ks[law] = d;
  j["ks"] = ks;
  j["generator"] = report.generator;
  if (report.elapsed_ms) {
    j["elapsed_ms"] = *report.elapsed_ms;
  } else {
    j["elapsed_ms"] = nullptr;
  }
  return j;
}

nlohmann::ordered_json to_json(const DiagnosisReport& report) {
  nlohmann::ordered_json j;
  j["preset"] = report.preset;
  // Which normalization the preset uses; only the mid-node scaling was changed.
  if (report.preset == "midnode") {
    j["normalization_variant"] = "corrected";
  } else if (report.preset == "custom") {
    j["normalization_variant"] = nullptr;
  } else {
    j["normalization_variant"] = "as_printed";
  }
  j["run"] = to_json(report.run);
  nlohmann::ordered_json ranking = nlohmann::ordered_json::array();
  for (const auto& c : report.ranking) ranking.push_back({{"law", c.law}, {"ks", c.ks}});
  j["ranking"] = ranking;
  return j;
}

nlohmann::ordered_json to_json(const ChiSquareReport& report) {
  return {{"n", report.n},
          {"reps", report.reps},
          {"categories", report.categories},
          {"statistic", report.statistic},
          {"degrees_of_freedom", report.degrees_of_freedom},
          {"p_value", report.p_value}};
}

}  // namespace permgraph
