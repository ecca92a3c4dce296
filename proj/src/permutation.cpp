#include "permgraph/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace permgraph {

namespace {

std::uint64_t small_factorial(std::size_t n) {
  if (n > 20) throw std::out_of_range("factorial exceeds 64 bits for n > 20");
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Permutation Permutation::identity(std::size_t n) {
  std::vector<value_type> v(n);
  std::iota(v.begin(), v.end(), value_type{1});
  return Permutation(std::move(v));
}

Permutation Permutation::decreasing(std::size_t n) {
  std::vector<value_type> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<value_type>(n - i);
  return Permutation(std::move(v));
}

Permutation Permutation::from_one_line(std::vector<value_type> values) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("permutation must be nonempty");
  std::vector<bool> seen(n + 1, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = values[i];
    if (v < 1 || v > n) {
      throw std::invalid_argument("value " + std::to_string(v) + " at position " + std::to_string(i + 1) +
                                  " is outside 1.." + std::to_string(n));
    }
    if (seen[v]) throw std::invalid_argument("duplicate value " + std::to_string(v));
    seen[v] = true;
  }
  return Permutation(std::move(values));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != i + 1) return false;
  }
  return true;
}

Permutation validate_permutation(std::span<const std::int64_t> seq) {
  const auto n = static_cast<std::int64_t>(seq.size());
  std::vector<Permutation::value_type> values;
  values.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 1 || seq[i] > n) {
      throw std::invalid_argument("value " + std::to_string(seq[i]) + " at position " + std::to_string(i + 1) +
                                  " is outside 1.." + std::to_string(n));
    }
    values.push_back(static_cast<Permutation::value_type>(seq[i]));
  }
  return Permutation::from_one_line(std::move(values));
}

Permutation parse_permutation(std::string_view text) {
  std::vector<std::int64_t> seq;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == ' ' || c == ',' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
      continue;
    }
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{} || end == text.data() + pos) {
      throw std::invalid_argument("unparsable permutation token near '" + std::string(text.substr(pos, 8)) + "'");
    }
    pos = static_cast<std::size_t>(end - text.data());
    if (pos < text.size() && text[pos] != ' ' && text[pos] != ',' && text[pos] != '\t' && text[pos] != '\r' &&
        text[pos] != '\n') {
      throw std::invalid_argument("unexpected character '" + std::string(1, text[pos]) + "' in permutation");
    }
    seq.push_back(value);
  }
  return validate_permutation(seq);
}

std::string format_permutation(const Permutation& perm) {
  std::string out;
  for (std::size_t i = 1; i <= perm.size(); ++i) {
    if (i > 1) out.push_back(' ');
    out += std::to_string(perm(i));
  }
  return out;
}

Permutation invert(const Permutation& perm) {
  std::vector<Permutation::value_type> inv(perm.size());
  for (std::size_t i = 1; i <= perm.size(); ++i) inv[perm(i) - 1] = static_cast<Permutation::value_type>(i);
  return Permutation::from_trusted(std::move(inv));
}

Permutation reverse(const Permutation& perm) {
  auto v = perm.values();
  return Permutation::from_trusted({v.rbegin(), v.rend()});
}

Permutation complement(const Permutation& perm) {
  const auto n = static_cast<Permutation::value_type>(perm.size());
  std::vector<Permutation::value_type> v(perm.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = n + 1 - perm.values()[i];
  return Permutation::from_trusted(std::move(v));
}

std::uint64_t lexicographic_rank(const Permutation& perm) {
  const std::size_t n = perm.size();
  std::uint64_t rank = 0;
  std::uint64_t f = small_factorial(n);
  std::vector<bool> used(n + 1, false);
  for (std::size_t i = 0; i < n; ++i) {
    f /= (n - i);
    const auto v = perm.values()[i];
    std::uint64_t smaller = 0;
    for (std::size_t u = 1; u < v; ++u) smaller += used[u] ? 0 : 1;
    rank += smaller * f;
    used[v] = true;
  }
  return rank;
}

Permutation lexicographic_unrank(std::size_t n, std::uint64_t rank) {
  std::uint64_t f = small_factorial(n);
  if (rank >= f) throw std::out_of_range("rank exceeds n! - 1");
  std::vector<Permutation::value_type> pool(n);
  std::iota(pool.begin(), pool.end(), Permutation::value_type{1});
  std::vector<Permutation::value_type> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    f /= (n - i);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation::from_trusted(std::move(out));
}

}  // namespace permgraph
