#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "permgraph/permutation.hpp"
#include "permgraph/rng.hpp"
#include "permgraph/samplers.hpp"
#include "permgraph/statistics.hpp"

namespace permgraph {

enum class SamplerKind { uniform, riffle, unfair };

struct SamplerSpec {
  SamplerKind kind = SamplerKind::uniform;
  PileSpec piles = PileSpec::uniform(2);  // riffle only
  PhiSequence phi = PhiSequence::identity();  // unfair only

  /// Riffle samples use the inverse-shuffle description.
  Permutation draw(std::size_t n, Rng& rng) const;
  std::string describe() const;
};

struct Normalization {
  double center = 0.0;
  double scale = 1.0;
};

/// Reference law for Kolmogorov distances.
class ReferenceLaw {
 public:
  enum class Kind { standard_normal, rayleigh_half_sqrt2, mixture_normal, uniform_scaled };

  static ReferenceLaw standard_normal() { return ReferenceLaw(Kind::standard_normal, 0, 0); }
  /// P(G > g) = exp(-g^2).
  static ReferenceLaw rayleigh() { return ReferenceLaw(Kind::rayleigh_half_sqrt2, 0, 0); }
  /// N(0, U(1-U)); CDF served from a cached 2048-point Hermite grid.
  static ReferenceLaw mixture_normal() { return ReferenceLaw(Kind::mixture_normal, 0, 0); }
  static ReferenceLaw uniform_scaled(double a, double b);

  /// "standard_normal", "rayleigh", "mixture_normal", "uniform_scaled(a,b)" or
  /// "uniform_sqrt3" for uniform_scaled(-sqrt 3, sqrt 3).
  static ReferenceLaw parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double cdf(double x) const;
  std::string name() const;

 private:
  ReferenceLaw(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
};

/// Mixture-normal CDF from the cached grid (|error| < 1e-6 against direct quadrature).
double mixture_normal_cdf_cached(double alpha);

/// sup_x |F_n(x) - F(x)|; throws on empty input.
double ks_distance(std::span<const double> samples, const ReferenceLaw& law);

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
};

/// Freedman-Diaconis binning unless `bins` is given; the last bin is closed.
Histogram make_histogram(std::span<const double> samples, std::optional<std::size_t> bins = std::nullopt);

struct MCConfig {
  std::size_t n = 1;
  std::size_t replications = 1;
  SamplerSpec sampler;
  StatisticId statistic;
  std::uint64_t seed = 0;
  std::optional<Normalization> normalization;
  std::vector<ReferenceLaw> ks_laws;
  std::optional<std::size_t> bins;

  void validate() const;
};

/// Execution knobs that never change results.
struct ExecutionOptions {
  unsigned threads = 1;
  bool keep_samples = false;
  bool timing = false;
};

struct MCReport {
  MCConfig config;
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1 denominator); 0 for one replicate
  Histogram histogram;
  std::vector<std::pair<std::string, double>> ks;
  std::string generator;
  std::optional<double> elapsed_ms;
  std::vector<double> samples;  // filled when keep_samples
};

/// Replicate r draws from stream (seed, r); results are independent of thread count.
MCReport run_mc(const MCConfig& config, const ExecutionOptions& options = {});

/// Draws the (normalized) statistic values only.
std::vector<double> simulate(const MCConfig& config, unsigned threads = 1);

struct DiagnosisCandidate {
  std::string law;
  double ks = 0.0;
};

struct DiagnosisReport {
  std::string preset;
  MCReport run;
  std::vector<DiagnosisCandidate> ranking;  // ascending KS
};

/// Runs the experiment and ranks every candidate law by KS distance.
DiagnosisReport limit_law_diagnosis(const MCConfig& config, const std::vector<ReferenceLaw>& candidates,
                                    const ExecutionOptions& options = {}, std::string preset = "custom");

enum class DiagnosisPreset { midnode, midnode_printed, extremal, smallk };
DiagnosisPreset parse_preset(std::string_view text);
std::string_view preset_name(DiagnosisPreset preset);

/// midnode: degree of n/2, normalization (n/2, sqrt n), laws {mixture_normal, standard_normal}.
/// midnode_printed: same with scale 2 sqrt n.
/// extremal: min degree, normalization (0, sqrt n), law {rayleigh}.
/// smallk: degree of vertex 1, normalization (n/2, n/sqrt 12), laws {uniform_sqrt3, standard_normal}.
std::pair<MCConfig, std::vector<ReferenceLaw>> diagnosis_preset(DiagnosisPreset preset, std::size_t n,
                                                                std::size_t reps, std::uint64_t seed);

struct ChiSquareReport {
  std::size_t n = 0;
  std::size_t reps = 0;
  std::size_t categories = 0;
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Homogeneity test between the pile and inverse-shuffle riffle samplers
/// over S_n; n <= 6.
ChiSquareReport sampler_equivalence_test(std::size_t n, const PileSpec& piles, std::size_t reps, std::uint64_t seed,
                                         unsigned threads = 1);

/// Goodness of fit of `sampler` to the uniform law on S_n; n <= 6.
ChiSquareReport uniformity_test(std::size_t n, const SamplerSpec& sampler, std::size_t reps, std::uint64_t seed);

/// Upper tail of the chi-square distribution.
double chi_square_upper_tail(double statistic, std::size_t dof);

nlohmann::ordered_json to_json(const MCConfig& config);
nlohmann::ordered_json to_json(const MCReport& report);
nlohmann::ordered_json to_json(const DiagnosisReport& report);
nlohmann::ordered_json to_json(const ChiSquareReport& report);

}  // namespace permgraph
