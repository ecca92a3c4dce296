#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "permgraph/numeric.hpp"

namespace permgraph {

/// Which form of a published formula to evaluate. Formulas whose printed form
/// survives exhaustive checking return the same value for both selectors.
enum class FormulaVariant { as_printed, corrected };

std::string_view variant_name(FormulaVariant v);

/// Accepts "printed", "as_printed" or "corrected".
FormulaVariant parse_variant(std::string_view text);

struct MeanVariance {
  Rational mean;
  Rational variance;
};

// ---- cliques and inversions ----------------------------------------------

/// E[K_m] = C(n,m)/m!, 1 <= m <= n.
Rational expected_cliques(std::uint64_t n, std::uint64_t m);

/// E[K_m^2] from the double sum over t + s <= m, with the half-integer
/// binomials evaluated exactly as generalized binomials.
Rational second_moment_cliques(std::uint64_t n, std::uint64_t m);

Rational variance_cliques(std::uint64_t n, std::uint64_t m);

/// (C(4m-2,2m-1) - 2 C(2m-1,m)^2) / (2 ((2m-1)!)^2), the leading coefficient of Var(K_m).
Rational variance_cliques_asymptote_coefficient(std::uint64_t m);

/// coefficient(m) * n^(2m-1)
Rational variance_cliques_asymptote(std::uint64_t n, std::uint64_t m);

/// mean: as_printed C(n,2) (the printed centering), corrected n(n-1)/4.
/// variance: n(n-1)(2n+5)/72 for both.
MeanVariance inversion_moments(std::uint64_t n, FormulaVariant variant);

// ---- degrees ---------------------------------------------------------------

/// mean (n-1)/2. variance: as_printed (n-1+(n-2k+1)^2)/6,
/// corrected (n-1)/6 + (n-2k+1)^2/12.
MeanVariance degree_moments(std::uint64_t n, std::uint64_t k, FormulaVariant variant);

// ---- isolated vertices -----------------------------------------------------

/// as_printed 1/(k n C(n,k)); corrected (k-1)!(n-k)!/n! = 1/(k C(n,k)).
Rational isolated_vertex_probability(std::uint64_t n, std::uint64_t k, FormulaVariant variant);

/// Sum of isolated_vertex_probability over k.
Rational expected_isolated(std::uint64_t n, FormulaVariant variant);

/// The printed (2n+2)/n^3 <= E[I_n] <= (2n+4)/n^3 bounds checked against both variants.
struct IsolatedBoundsCheck {
  Rational lower;
  Rational upper;
  Rational as_printed;
  Rational corrected;
  bool as_printed_within = false;
  bool corrected_within = false;
};
IsolatedBoundsCheck isolated_bounds_check(std::uint64_t n);

/// Sum_{k=0}^n 1/C(n,k) with the printed bounds 2, 2 + 2/n + 2(n-3)/(n(n-1)), 2 + 4/n.
/// The middle bound is undefined for n = 1.
struct BinomialReciprocalSum {
  Rational sum;
  Rational lower;
  std::optional<Rational> middle;
  Rational upper;
};
BinomialReciprocalSum binomial_reciprocal_sum(std::uint64_t n);

/// P(vertices i, i+1, ..., i+k all isolated); 1 <= i, i + k <= n.
/// as_printed ((n-k)!/n!)^2 (i-1)!; corrected (i-1)!(n-i-k)!/n!.
Rational consecutive_isolated_probability(std::uint64_t n, std::uint64_t i, std::uint64_t k,
                                          FormulaVariant variant);

// ---- common neighbours -----------------------------------------------------

/// Probability that some k not in {i, j} is adjacent to both i and j, three ways:
///   p_printed                       1 - the printed Beta double sum (log-gamma Beta)
///   p_complement_integral           1 - 2 * int_0^1 int_0^{x_i} x_i^{i-1}(1-x_i+x_j)^{j-i-1}(1-x_j)^{n-j}
///   p_complement_integral_corrected 1 - P(E) with both orderings of (X_i, X_j) integrated
///                                   separately; the second region contributes
///                                   int int_{x_i<x_j} x_j^{i-1}(1-x_i)^{n-j}
/// Integrals use adaptive Gauss-Kronrod to absolute error 1e-9; throws
/// std::runtime_error when the error estimate is not met.
struct CommonNeighborProbability {
  double p_printed = 0.0;
  double p_complement_integral = 0.0;
  double p_complement_integral_corrected = 0.0;
};
CommonNeighborProbability common_neighbor_probability(std::uint64_t n, std::uint64_t i, std::uint64_t j);

/// B(a, b) via log-gamma.
double beta_function(double a, double b);

// ---- level (directed max in-degree) ----------------------------------------

/// as_printed: mean n-1-sum l! l^(n-1)/n!, variance n(n-1) - 2 sum l! l^(n-l+1)/n! - mean^2.
/// corrected:  mean n-1-sum l! l^(n-l)/n!,  variance n(n-1) - 2 sum l! l^(n-l+1)/n! - mean - mean^2.
/// Sums run over l = 1..n-1.
MeanVariance level_moments(std::uint64_t n, FormulaVariant variant);

struct LevelAsymptotics {
  double mean_approx;  // n - sqrt(pi n / 2)
  double var_approx;   // (2 - pi/2) n
};
LevelAsymptotics level_asymptotics(std::uint64_t n);

// ---- all increasing subsequences ---------------------------------------------

struct TotalCycleMoments {
  Rational mean;
  Rational second_moment;
};
TotalCycleMoments total_cycle_moments(std::uint64_t n);

/// mean ~ n^{-1/4} exp(2 sqrt n) / (2 sqrt(pi e)),
/// second moment ~ c n^{-1/4} exp(2 sqrt(2 + sqrt 5) sqrt n) with c = 0.0106.
/// Log values are always finite; `overflow` is set when either value exceeds double range.
struct TotalCycleAsymptotics {
  double mean_approx;
  double second_moment_approx;
  double log_mean_approx;
  double log_second_moment_approx;
  bool overflow = false;
};
TotalCycleAsymptotics total_cycle_asymptotics(std::uint64_t n);

inline constexpr double kTotalCycleSecondMomentConstant = 0.0106;

// ---- limit laws --------------------------------------------------------------

double standard_normal_cdf(double x);

/// P(Gamma > gamma) = exp(-gamma^2); gamma >= 0.
double rayleigh_tail(double gamma);

/// CDF of N(0, U(1-U)), U ~ Uniform(0,1): int_0^1 Phi(alpha / sqrt(u(1-u))) du,
/// by adaptive quadrature to absolute error 1e-8.
double mixture_normal_cdf(double alpha);

/// Density of N(0, U(1-U)).
double mixture_normal_pdf(double alpha);

struct LisScaling {
  double center;  // 2 sqrt(n)
  double scale;   // n^(1/6)
};
LisScaling lis_scaling(std::uint64_t n);

}  // namespace permgraph
