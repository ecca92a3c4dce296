#include "permgraph/numeric.hpp"

#include <stdexcept>

namespace permgraph {

BigCount factorial(std::uint64_t n) {
  BigCount result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

BigCount binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigCount result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

Rational generalized_binomial(const Rational& x, std::uint64_t k) {
  Rational result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result *= x - Rational(static_cast<long>(i));
    result /= Rational(static_cast<long>(i + 1));
  }
  return result;
}

Rational make_rational(const BigCount& num, const BigCount& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigCount& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, unsigned digits) {
  BigCount scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  BigCount num = abs(value.get_num()) * scale * 2 + value.get_den();
  BigCount den = value.get_den() * 2;
  BigCount scaled = num / den;  // floor(|x|*10^d + 1/2)
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (value < 0 && scaled != 0) s.insert(0, "-");
  return s;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  try {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      return make_rational(BigCount(text.substr(0, slash)), BigCount(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigCount(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument(text);
    BigCount den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    if (digits.front() == '+') digits.erase(0, 1);
    return make_rational(BigCount(digits), den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  }
}

}  // namespace permgraph
