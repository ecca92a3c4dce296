#include "permgraph/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace permgraph {

PileSpec PileSpec::uniform(std::size_t piles) {
  if (piles == 0) throw std::invalid_argument("number of piles must be positive");
  return PileSpec{std::vector<double>(piles, 1.0 / static_cast<double>(piles))};
}

void PileSpec::validate() const {
  if (p.empty()) throw std::invalid_argument("pile spec needs at least one pile");
  double sum = 0.0;
  for (double pi : p) {
    if (!(pi >= 0.0) || !std::isfinite(pi)) throw std::invalid_argument("pile probabilities must be finite and >= 0");
    sum += pi;
  }
  // Decimal inputs such as 0.5,0.3,0.2 carry a few ulps of representation error.
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("pile probabilities must sum to 1");
}

void DigitWord::validate() const {
  if (alphabet == 0) throw std::invalid_argument("digit alphabet must be nonempty");
  for (auto d : digits) {
    if (d < 1 || d > alphabet) throw std::invalid_argument("digit outside alphabet");
  }
}

PhiSequence PhiSequence::constant(std::uint64_t value) {
  if (value < 1) throw std::invalid_argument("phi values must be >= 1");
  return PhiSequence(Kind::constant, value, {});
}

PhiSequence PhiSequence::table(std::vector<std::uint64_t> values) {
  for (auto v : values) {
    if (v < 1) throw std::invalid_argument("phi values must be >= 1");
  }
  return PhiSequence(Kind::table, 1, std::move(values));
}

std::uint64_t PhiSequence::operator()(std::size_t i) const {
  switch (kind_) {
    case Kind::identity:
      return i;
    case Kind::constant:
      return constant_;
    case Kind::table:
      if (i < 1 || i > table_.size()) throw std::out_of_range("phi table does not cover index " + std::to_string(i));
      return table_[i - 1];
  }
  return 1;
}

void PhiSequence::require_defined_up_to(std::size_t n) const {
  if (kind_ == Kind::table && table_.size() < n) {
    throw std::invalid_argument("phi table has " + std::to_string(table_.size()) + " entries, need " +
                                std::to_string(n));
  }
}

std::string PhiSequence::describe() const {
  switch (kind_) {
    case Kind::identity:
      return "identity";
    case Kind::constant:
      return "const:" + std::to_string(constant_);
    case Kind::table: {
      std::string s = "table:";
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(table_[i]);
      }
      return s;
    }
  }
  return {};
}

Permutation sample_uniform(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  std::vector<Permutation::value_type> v(n);
  std::iota(v.begin(), v.end(), Permutation::value_type{1});
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(v[i], v[j]);
  }
  return Permutation::from_trusted(std::move(v));
}

Permutation sample_uniform(std::size_t n, RngState state) {
  Rng rng(state);
  return sample_uniform(n, rng);
}

namespace {

// Binomial(trials, p) by explicit Bernoulli trials; exact and stdlib-independent.
std::size_t binomial_draw(std::size_t trials, double p, Rng& rng) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) hits += rng.bernoulli(p) ? 1 : 0;
  return hits;
}

std::uint32_t categorical_draw(std::span<const double> cumulative, Rng& rng) {
  const double u = rng.uniform01() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<std::uint32_t>(it - cumulative.begin()) + 1;
}

}  // namespace

Permutation sample_riffle_piles(std::size_t n, const PileSpec& piles, Rng& rng) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  piles.validate();
  const std::size_t a = piles.piles();

  // Multinomial pile sizes by sequential binomial conditioning.
  std::vector<std::size_t> sizes(a, 0);
  std::size_t remaining = n;
  double mass_left = 1.0;
  for (std::size_t i = 0; i + 1 < a && remaining > 0; ++i) {
    const double q = mass_left > 0.0 ? std::min(1.0, piles.p[i] / mass_left) : 0.0;
    sizes[i] = binomial_draw(remaining, q, rng);
    remaining -= sizes[i];
    mass_left -= piles.p[i];
  }
  sizes[a - 1] += remaining;

  // A uniform interleaving is a uniform arrangement of the multiset of pile labels.
  std::vector<std::uint32_t> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < a; ++i) labels.insert(labels.end(), sizes[i], static_cast<std::uint32_t>(i));
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(labels[i], labels[j]);
  }

  std::vector<Permutation::value_type> next_card(a);
  Permutation::value_type start = 1;
  for (std::size_t i = 0; i < a; ++i) {
    next_card[i] = start;
    start += static_cast<Permutation::value_type>(sizes[i]);
  }
  std::vector<Permutation::value_type> deck(n);
  for (std::size_t t = 0; t < n; ++t) deck[t] = next_card[labels[t]]++;
  return Permutation::from_trusted(std::move(deck));
}

Permutation sample_riffle_piles(std::size_t n, const PileSpec& piles, RngState state) {
  Rng rng(state);
  return sample_riffle_piles(n, piles, rng);
}

InverseShuffle sample_riffle_inverse(std::size_t n, const PileSpec& piles, Rng& rng) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  piles.validate();
  std::vector<double> cumulative(piles.p.size());
  std::partial_sum(piles.p.begin(), piles.p.end(), cumulative.begin());

  DigitWord word{piles.piles(), std::vector<std::uint32_t>(n)};
  for (auto& d : word.digits) d = categorical_draw(cumulative, rng);

  // sigma lists the cards after a stable sort by digit; rho = sigma^{-1}.
  std::vector<Permutation::value_type> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Permutation::value_type{1});
  std::stable_sort(sigma.begin(), sigma.end(),
                   [&](auto lhs, auto rhs) { return word.digits[lhs - 1] < word.digits[rhs - 1]; });
  auto rho = invert(Permutation::from_trusted(std::move(sigma)));
  return {std::move(rho), std::move(word)};
}

InverseShuffle sample_riffle_inverse(std::size_t n, const PileSpec& piles, RngState state) {
  Rng rng(state);
  return sample_riffle_inverse(n, piles, rng);
}

Permutation inverse_shuffle_from_word(const DigitWord& word) {
  word.validate();
  if (word.digits.empty()) throw std::invalid_argument("digit word must be nonempty");
  std::vector<std::size_t> offset(word.alphabet + 2, 0);
  for (auto d : word.digits) ++offset[d + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<Permutation::value_type> rho(word.digits.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    rho[i] = static_cast<Permutation::value_type>(++offset[word.digits[i]]);
  }
  return Permutation::from_trusted(std::move(rho));
}

RankOutcome rank_permutation(std::span<const double> scores) {
  const std::size_t n = scores.size();
  if (n == 0) throw std::invalid_argument("cannot rank an empty score list");
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return scores[l] < scores[r]; });
  RankOutcome out{Permutation::identity(1), 0};
  std::vector<Permutation::value_type> ranks(n);
  for (std::size_t r = 0; r < n; ++r) {
    ranks[order[r]] = static_cast<Permutation::value_type>(r + 1);
    if (r > 0 && scores[order[r]] == scores[order[r - 1]]) ++out.tie_events;
  }
  out.permutation = Permutation::from_trusted(std::move(ranks));
  return out;
}

RankOutcome unfair_from_draws(std::span<const std::vector<double>> draws) {
  std::vector<double> maxima;
  maxima.reserve(draws.size());
  for (const auto& d : draws) {
    if (d.empty()) throw std::invalid_argument("every player needs at least one draw");
    maxima.push_back(*std::max_element(d.begin(), d.end()));
  }
  return rank_permutation(maxima);
}

RankOutcome sample_unfair_detailed(std::size_t n, const PhiSequence& phi, Rng& rng) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  phi.require_defined_up_to(n);
  std::vector<double> z(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto draws = phi(i);
    const double u = rng.uniform01();
    z[i - 1] = draws == 1 ? u : std::pow(u, 1.0 / static_cast<double>(draws));
  }
  return rank_permutation(z);
}

Permutation sample_unfair(std::size_t n, const PhiSequence& phi, Rng& rng) {
  return sample_unfair_detailed(n, phi, rng).permutation;
}

Permutation sample_unfair(std::size_t n, const PhiSequence& phi, RngState state) {
  Rng rng(state);
  return sample_unfair(n, phi, rng);
}

}  // namespace permgraph
