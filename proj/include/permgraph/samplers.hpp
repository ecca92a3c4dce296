#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permgraph/permutation.hpp"
#include "permgraph/rng.hpp"

namespace permgraph {

/// Pile (digit) probabilities p_1..p_a of a biased a-shuffle.
struct PileSpec {
  std::vector<double> p;

  static PileSpec uniform(std::size_t piles);

  std::size_t piles() const noexcept { return p.size(); }

  /// Throws std::invalid_argument unless a >= 1, p_i >= 0 and |sum p - 1| <= 1e-12.
  void validate() const;
};

/// Digits X_1..X_n over the alphabet {1..alphabet}.
struct DigitWord {
  std::size_t alphabet = 0;
  std::vector<std::uint32_t> digits;

  void validate() const;
};

/// phi(i) >= 1 draws for player i. Identity and constant sequences are
/// represented symbolically; tables cover 1..table.size().
class PhiSequence {
 public:
  enum class Kind { identity, constant, table };

  static PhiSequence identity() { return PhiSequence(Kind::identity, 1, {}); }
  static PhiSequence constant(std::uint64_t value);
  static PhiSequence table(std::vector<std::uint64_t> values);

  Kind kind() const noexcept { return kind_; }

  /// phi(i) for 1-based i; throws std::out_of_range when a table does not cover i.
  std::uint64_t operator()(std::size_t i) const;

  /// Throws unless phi is defined (and >= 1) on 1..n.
  void require_defined_up_to(std::size_t n) const;

  /// "identity", "const:C" or "table:v1,v2,...".
  std::string describe() const;

 private:
  PhiSequence(Kind kind, std::uint64_t constant, std::vector<std::uint64_t> table)
      : kind_(kind), constant_(constant), table_(std::move(table)) {}

  Kind kind_;
  std::uint64_t constant_;
  std::vector<std::uint64_t> table_;
};

Permutation sample_uniform(std::size_t n, Rng& rng);
Permutation sample_uniform(std::size_t n, RngState state);

/// Pile form: multinomial pile sizes, then a uniformly chosen interleaving
/// keeping each pile's internal order. Position t of the result holds the card
/// dealt t-th.
Permutation sample_riffle_piles(std::size_t n, const PileSpec& piles, Rng& rng);
Permutation sample_riffle_piles(std::size_t n, const PileSpec& piles, RngState state);

struct InverseShuffle {
  Permutation permutation;  // rho = sigma^{-1}
  DigitWord word;
};

/// Inverse-shuffle form: i.i.d. digits, stable sort of the cards by digit (sigma), and
/// the inverse rho = sigma^{-1} returned alongside the digit word.
InverseShuffle sample_riffle_inverse(std::size_t n, const PileSpec& piles, Rng& rng);
InverseShuffle sample_riffle_inverse(std::size_t n, const PileSpec& piles, RngState state);

/// rho(i) = #{j : X_j < X_i} + #{j <= i : X_j = X_i}.
Permutation inverse_shuffle_from_word(const DigitWord& word);

struct RankOutcome {
  Permutation permutation;
  std::size_t tie_events = 0;  // adjacent equal scores after sorting
};

/// Ranks of `scores` (1 = smallest); ties broken by index.
RankOutcome rank_permutation(std::span<const double> scores);

/// Player i's score is the maximum of its draws; returns the rank permutation.
RankOutcome unfair_from_draws(std::span<const std::vector<double>> draws);

/// Z_i = U_i^{1/phi(i)} (the law of the max of phi(i) uniforms), ranked.
RankOutcome sample_unfair_detailed(std::size_t n, const PhiSequence& phi, Rng& rng);
Permutation sample_unfair(std::size_t n, const PhiSequence& phi, Rng& rng);
Permutation sample_unfair(std::size_t n, const PhiSequence& phi, RngState state);

}  // namespace permgraph
