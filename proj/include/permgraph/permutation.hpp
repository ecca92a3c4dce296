#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permgraph {

/// A bijection on {1..n} in one-line notation: position i (1-based) holds value(i).
///
/// Instances are immutable and always valid; every constructor path checks the
/// bijection property except `from_trusted`, which is reserved for generators
/// that produce bijections by construction.
class Permutation {
 public:
  using value_type = std::uint32_t;

  static Permutation identity(std::size_t n);
  static Permutation decreasing(std::size_t n);

  /// Throws std::invalid_argument unless `values` is a bijection on {1..size}.
  static Permutation from_one_line(std::vector<value_type> values);

  /// No validation. Callers guarantee a bijection on {1..size}.
  static Permutation from_trusted(std::vector<value_type> values) { return Permutation(std::move(values)); }

  std::size_t size() const noexcept { return values_.size(); }

  /// 1-based access, pi(i).
  value_type operator()(std::size_t i) const { return values_[i - 1]; }

  std::span<const value_type> values() const noexcept { return values_; }

  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<value_type> values) : values_(std::move(values)) {}

  std::vector<value_type> values_;
};

/// Checks that `seq` is a bijection on {1..len(seq)}.
Permutation validate_permutation(std::span<const std::int64_t> seq);

/// Parses "5 2 3 1 4" or "5,2,3,1,4" (mixed separators allowed).
Permutation parse_permutation(std::string_view text);

/// Space-separated one-line form, e.g. "5 2 3 1 4".
std::string format_permutation(const Permutation& perm);

/// r(perm(i)) = i.
Permutation invert(const Permutation& perm);

/// r(i) = perm(n + 1 - i).
Permutation reverse(const Permutation& perm);

/// r(i) = n + 1 - perm(i). Maps decreasing subsequences to increasing ones.
Permutation complement(const Permutation& perm);

/// Lexicographic rank in [0, n!) for n <= 20.
std::uint64_t lexicographic_rank(const Permutation& perm);

/// Inverse of lexicographic_rank.
Permutation lexicographic_unrank(std::size_t n, std::uint64_t rank);

}  // namespace permgraph
