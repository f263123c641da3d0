#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace fastsda {

/// xoshiro256** seeded through splitmix64. Every derived quantity (doubles,
/// bounded integers, normals, shuffles) is computed here rather than through
/// <random> distributions, whose output is implementation-defined, so a seed
/// reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform01();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Standard normal via Box-Muller (one variate per call; no caching).
  double normal();

  /// Advances the state by 2^128 steps.
  void jump();

  /// Independent stream number i: a copy of this generator advanced by
  /// (i + 1) jumps. The parent state is not modified.
  Rng split(std::uint64_t i) const;

  /// Fisher-Yates shuffle driven by uniform_index.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_index(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  const std::array<std::uint64_t, 4>& state() const { return s_; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Mixes a base seed with a list of tags into a new seed (splitmix64 chain).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

}  // namespace fastsda
