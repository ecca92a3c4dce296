#include "permgraph/closed_form.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace permgraph {

namespace {

using boost::math::quadrature::gauss_kronrod;

void require_positive(std::uint64_t n) {
  if (n < 1) throw std::out_of_range("n must be >= 1");
}

void require_index(std::uint64_t v, std::uint64_t n, const char* what) {
  if (v < 1 || v > n) {
    throw std::out_of_range(std::string(what) + "=" + std::to_string(v) + " outside 1.." + std::to_string(n));
  }
}

Rational big_ratio(const BigCount& num, const BigCount& den) { return make_rational(num, den); }

BigCount power(std::uint64_t base, std::uint64_t exp) {
  BigCount out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

Rational q(long v) { return Rational(v); }
Rational q(long num, long den) { return make_rational(num, den); }

// Adaptive Gauss-Kronrod on [a, b]; the error estimate must meet `abs_tol`.
template <typename F>
double integrate(F f, double a, double b, double abs_tol) {
  double error = 0.0;
  const double value = gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-11, &error);
  if (!(error <= abs_tol)) {
    throw std::runtime_error("quadrature did not converge (error estimate " + std::to_string(error) + ")");
  }
  return value;
}

}  // namespace

std::string_view variant_name(FormulaVariant v) { return v == FormulaVariant::as_printed ? "as_printed" : "corrected"; }

FormulaVariant parse_variant(std::string_view text) {
  if (text == "printed" || text == "as_printed") return FormulaVariant::as_printed;
  if (text == "corrected") return FormulaVariant::corrected;
  throw std::invalid_argument("unknown formula variant '" + std::string(text) + "'");
}

Rational expected_cliques(std::uint64_t n, std::uint64_t m) {
  require_index(m, n, "m");
  return big_ratio(binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m)), factorial(m));
}

Rational second_moment_cliques(std::uint64_t n, std::uint64_t m) {
  require_index(m, n, "m");
  Rational total = 0;
  for (std::uint64_t t = 0; t <= m; ++t) {
    for (std::uint64_t s = 0; t + s <= m; ++s) {
      const std::uint64_t size = 2 * m - t;
      const auto choose_n = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(size));
      if (choose_n == 0) continue;
      // C(m-t-s-1/2, m-t-s) and C(s+(t+1)/2-1, s) are half-integer binomials.
      const std::uint64_t r = m - t - s;
      const Rational b1 = generalized_binomial(q(static_cast<long>(2 * r) - 1, 2), r);
      Rational top = q(static_cast<long>(2 * s + t) - 1, 2);
      top.canonicalize();
      const Rational b2 = generalized_binomial(top, s);
      const auto b3 = binomial(static_cast<std::int64_t>(size), static_cast<std::int64_t>(2 * m - 2 * t - 2 * s));
      Rational term = big_ratio(power(4, m - t) * choose_n * b3, factorial(size));
      total += term * b1 * b2;
    }
  }
  return total;
}

Rational variance_cliques(std::uint64_t n, std::uint64_t m) {
  const Rational mean = expected_cliques(n, m);
  return second_moment_cliques(n, m) - mean * mean;
}

Rational variance_cliques_asymptote_coefficient(std::uint64_t m) {
  if (m < 1) throw std::out_of_range("m must be >= 1");
  const auto a = binomial(static_cast<std::int64_t>(4 * m - 2), static_cast<std::int64_t>(2 * m - 1));
  const auto c = binomial(static_cast<std::int64_t>(2 * m - 1), static_cast<std::int64_t>(m));
  const auto f = factorial(2 * m - 1);
  return big_ratio(a - 2 * c * c, 2 * f * f);
}

Rational variance_cliques_asymptote(std::uint64_t n, std::uint64_t m) {
  return variance_cliques_asymptote_coefficient(m) * Rational(power(n, 2 * m - 1));
}

MeanVariance inversion_moments(std::uint64_t n, FormulaVariant variant) {
  require_positive(n);
  const BigCount nn = static_cast<unsigned long>(n);
  const Rational variance = big_ratio(nn * (nn - 1) * (2 * nn + 5), 72);
  const Rational mean = variant == FormulaVariant::as_printed ? Rational(binomial(static_cast<std::int64_t>(n), 2))
                                                              : big_ratio(nn * (nn - 1), 4);
  return {mean, variance};
}

MeanVariance degree_moments(std::uint64_t n, std::uint64_t k, FormulaVariant variant) {
  require_index(k, n, "k");
  const long nl = static_cast<long>(n);
  const long kl = static_cast<long>(k);
  const Rational mean = q(nl - 1, 2);
  const long tilt = nl - 2 * kl + 1;
  Rational variance;
  if (variant == FormulaVariant::as_printed) {
    variance = q(nl - 1 + tilt * tilt, 6);
  } else {
    variance = q(nl - 1, 6) + q(tilt * tilt, 12);
  }
  variance.canonicalize();
  Rational m = mean;
  m.canonicalize();
  return {m, variance};
}

Rational isolated_vertex_probability(std::uint64_t n, std::uint64_t k, FormulaVariant variant) {
  require_index(k, n, "k");
  const BigCount kc = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)) * static_cast<unsigned long>(k);
  if (variant == FormulaVariant::as_printed) return big_ratio(1, kc * static_cast<unsigned long>(n));
  return big_ratio(1, kc);
}

Rational expected_isolated(std::uint64_t n, FormulaVariant variant) {
  require_positive(n);
  Rational total = 0;
  for (std::uint64_t k = 1; k <= n; ++k) total += isolated_vertex_probability(n, k, variant);
  return total;
}

IsolatedBoundsCheck isolated_bounds_check(std::uint64_t n) {
  require_positive(n);
  IsolatedBoundsCheck out;
  const BigCount cube = power(n, 3);
  const BigCount nn = static_cast<unsigned long>(n);
  out.lower = big_ratio(2 * nn + 2, cube);
  out.upper = big_ratio(2 * nn + 4, cube);
  out.as_printed = expected_isolated(n, FormulaVariant::as_printed);
  out.corrected = expected_isolated(n, FormulaVariant::corrected);
  out.as_printed_within = out.lower <= out.as_printed && out.as_printed <= out.upper;
  out.corrected_within = out.lower <= out.corrected && out.corrected <= out.upper;
  return out;
}

BinomialReciprocalSum binomial_reciprocal_sum(std::uint64_t n) {
  require_positive(n);
  BinomialReciprocalSum out;
  out.sum = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    out.sum += big_ratio(1, binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)));
  }
  const long nl = static_cast<long>(n);
  out.lower = 2;
  if (n > 1) {
    Rational middle = q(2) + q(2, nl) + q(2 * (nl - 3), nl * (nl - 1));
    middle.canonicalize();
    out.middle = middle;
  }
  Rational upper = q(2) + q(4, nl);
  upper.canonicalize();
  out.upper = upper;
  return out;
}

Rational consecutive_isolated_probability(std::uint64_t n, std::uint64_t i, std::uint64_t k,
                                          FormulaVariant variant) {
  require_positive(n);
  if (i < 1 || i + k > n) {
    throw std::out_of_range("consecutive isolation needs 1 <= i and i + k <= n");
  }
  const BigCount nf = factorial(n);
  if (variant == FormulaVariant::as_printed) {
    const Rational ratio = big_ratio(factorial(n - k), nf);
    return ratio * ratio * Rational(factorial(i - 1));
  }
  return big_ratio(factorial(i - 1) * factorial(n - i - k), nf);
}

double beta_function(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

CommonNeighborProbability common_neighbor_probability(std::uint64_t n, std::uint64_t i, std::uint64_t j) {
  if (!(1 <= i && i < j && j <= n)) throw std::out_of_range("common neighbour needs 1 <= i < j <= n");
  const double ni = static_cast<double>(i);
  const double gap = static_cast<double>(j - i - 1);
  const double tail = static_cast<double>(n - j);
  CommonNeighborProbability out;

  double sum = 0.0;
  for (std::uint64_t l = 0; l <= n; ++l) {
    const double base = gap * static_cast<double>(n - l) + tail;
    for (std::uint64_t r = 0; r <= l; ++r) {
      const double coeff = std::exp(std::lgamma(n + 1.0) - std::lgamma(l + 1.0) - std::lgamma(n - l + 1.0) +
                                    std::lgamma(l + 1.0) - std::lgamma(r + 1.0) - std::lgamma(l - r + 1.0));
      sum += coeff * beta_function(ni, base + 2.0 + static_cast<double>(l) - static_cast<double>(r)) / (base + 1.0);
    }
  }
  out.p_printed = 1.0 - sum;

  constexpr double kTol = 1e-9;
  // Region X_j < X_i: k < i needs X_k < x_i, i < k < j avoids (x_j, x_i), k > j needs X_k > x_j.
  auto lower_region = [&](double xi) {
    auto inner = [&](double xj) {
      return std::pow(xi, ni - 1.0) * std::pow(1.0 - xi + xj, gap) * std::pow(1.0 - xj, tail);
    };
    return xi <= 0.0 ? 0.0 : integrate(inner, 0.0, xi, kTol);
  };
  const double below = integrate(lower_region, 0.0, 1.0, kTol);
  out.p_complement_integral = 1.0 - 2.0 * below;

  // Region X_i < X_j: no k between them can reach both; k < i needs X_k < x_j, k > j needs X_k > x_i.
  auto upper_region = [&](double xi) {
    auto inner = [&](double xj) { return std::pow(xj, ni - 1.0) * std::pow(1.0 - xi, tail); };
    return xi >= 1.0 ? 0.0 : integrate(inner, xi, 1.0, kTol);
  };
  const double above = integrate(upper_region, 0.0, 1.0, kTol);
  out.p_complement_integral_corrected = 1.0 - (below + above);
  return out;
}

MeanVariance level_moments(std::uint64_t n, FormulaVariant variant) {
  require_positive(n);
  const BigCount nf = factorial(n);
  Rational mean_sum = 0;
  Rational second_sum = 0;
  for (std::uint64_t l = 1; l + 1 <= n; ++l) {
    const std::uint64_t exponent = variant == FormulaVariant::as_printed ? n - 1 : n - l;
    mean_sum += big_ratio(factorial(l) * power(l, exponent), nf);
    second_sum += big_ratio(factorial(l) * power(l, n - l + 1), nf);
  }
  const long nl = static_cast<long>(n);
  const Rational mean = q(nl - 1) - mean_sum;
  Rational variance = q(nl * (nl - 1)) - 2 * second_sum - mean * mean;
  if (variant == FormulaVariant::corrected) variance -= mean;
  return {mean, variance};
}

LevelAsymptotics level_asymptotics(std::uint64_t n) {
  require_positive(n);
  const double nd = static_cast<double>(n);
  return {nd - std::sqrt(std::numbers::pi * nd / 2.0), (2.0 - std::numbers::pi / 2.0) * nd};
}

TotalCycleMoments total_cycle_moments(std::uint64_t n) {
  require_positive(n);
  TotalCycleMoments out{0, 0};
  for (std::uint64_t m = 0; m <= n; ++m) {
    out.mean += big_ratio(binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m)), factorial(m));
  }
  for (std::uint64_t m = 0; m <= n; ++m) {
    for (std::uint64_t l = 0; m + l <= n; ++l) {
      // C((m+1)/2 + l - 1, l)
      Rational top(static_cast<long>(m + 1 + 2 * l) - 2, 2);
      top.canonicalize();
      const Rational gb = generalized_binomial(top, l);
      const auto c = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m + l));
      out.second_moment += big_ratio(power(4, l) * c, factorial(m + l)) * gb;
    }
  }
  return out;
}

TotalCycleAsymptotics total_cycle_asymptotics(std::uint64_t n) {
  require_positive(n);
  const double nd = static_cast<double>(n);
  const double root = std::sqrt(nd);
  TotalCycleAsymptotics out{};
  out.log_mean_approx =
      -std::log(2.0 * std::sqrt(std::numbers::pi * std::numbers::e)) - 0.25 * std::log(nd) + 2.0 * root;
  out.log_second_moment_approx = std::log(kTotalCycleSecondMomentConstant) - 0.25 * std::log(nd) +
                                 2.0 * std::sqrt(2.0 + std::sqrt(5.0)) * root;
  const double limit = std::log(std::numeric_limits<double>::max());
  out.overflow = out.log_mean_approx > limit || out.log_second_moment_approx > limit;
  out.mean_approx = std::exp(out.log_mean_approx);
  out.second_moment_approx = std::exp(out.log_second_moment_approx);
  return out;
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double rayleigh_tail(double gamma) {
  if (!(gamma >= 0.0)) throw std::domain_error("Rayleigh tail needs gamma >= 0");
  return std::exp(-gamma * gamma);
}

// With u = (1 - cos t)/2 the weight sqrt(u(1-u)) becomes sin(t)/2 and the
// endpoint singularities of the integrand disappear.
double mixture_normal_cdf(double alpha) {
  if (alpha == 0.0) return 0.5;
  if (std::isinf(alpha)) return alpha > 0 ? 1.0 : 0.0;
  auto f = [alpha](double t) {
    const double s = std::sin(t);
    if (s <= 0.0) return 0.0;
    return standard_normal_cdf(2.0 * alpha / s) * s / 2.0;
  };
  return integrate(f, 0.0, std::numbers::pi, 1e-8);
}

double mixture_normal_pdf(double alpha) {
  auto f = [alpha](double t) {
    const double s = std::sin(t);
    if (s <= 0.0) return 0.0;
    const double z = 2.0 * alpha / s;
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  };
  return integrate(f, 0.0, std::numbers::pi, 1e-8);
}

LisScaling lis_scaling(std::uint64_t n) {
  require_positive(n);
  const double nd = static_cast<double>(n);
  return {2.0 * std::sqrt(nd), std::pow(nd, 1.0 / 6.0)};
}

}  // namespace permgraph
