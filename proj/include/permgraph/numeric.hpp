#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace permgraph {

/// Exact nonnegative counts (subsequence counts grow like C(n,m)).
using BigCount = mpz_class;

/// Exact rational, always kept in canonical form.
using Rational = mpq_class;

BigCount factorial(std::uint64_t n);

/// C(n, k); zero when k < 0 or k > n.
BigCount binomial(std::int64_t n, std::int64_t k);

/// Generalized binomial x(x-1)...(x-k+1)/k! for rational x.
Rational generalized_binomial(const Rational& x, std::uint64_t k);

Rational make_rational(const BigCount& num, const BigCount& den);

std::string to_string(const BigCount& value);

/// "num/den", with "/1" kept for integers.
std::string to_string(const Rational& value);

/// Decimal rendering with a fixed number of fractional digits (rounded half away from zero).
std::string to_decimal(const Rational& value, unsigned digits);

double to_double(const Rational& value);

/// Accepts "a", "a/b" or a finite decimal like "-1.25".
Rational parse_rational(const std::string& text);

}  // namespace permgraph
