#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace permgraph {

/// Names one reproducible random stream.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const RngState&, const RngState&) = default;
};

/// xoshiro256** whose 256-bit state is filled by splitmix64 from a mix of
/// (seed, stream_index). Distinct stream indices give statistically
/// independent substreams; equal (seed, stream_index) give identical output.
///
/// All derived variates (bounded integers, unit uniforms) are implemented here
/// rather than through <random> distributions so sequences are identical across
/// standard library implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  static constexpr std::string_view kGeneratorId = "xoshiro256**/splitmix64(seed,stream)";

  explicit Rng(RngState state);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  std::uint64_t next();

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform01();

  /// Uniform integer in [0, bound); bound > 0. Unbiased (Lemire rejection).
  std::uint64_t below(std::uint64_t bound);

  /// True with probability p.
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace permgraph
