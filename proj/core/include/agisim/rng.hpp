#pragma once

// Portable random streams.
//
// Generator: xoshiro256** (Blackman & Vigna), state seeded from SplitMix64.
// All derived draws (uniform, normal, Poisson, bounded integers) are
// specified here bit-for-bit so that another implementation can reproduce
// a trajectory exactly. See docs/rng.md for the derivation and test vectors.

#include <array>
#include <cstdint>
#include <string_view>

namespace agisim {

/// SplitMix64 finalizer (the output function applied to a counter).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return splitmix64_mix(state_);
  }

 private:
  std::uint64_t state_;
};

/// FNV-1a 64-bit hash of a stream label.
constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

class Rng {
 public:
  using State = std::array<std::uint64_t, 4>;

  /// Seeds the four state words with the first four SplitMix64 outputs.
  explicit Rng(std::uint64_t seed) noexcept;
  explicit Rng(const State& state) noexcept : s_(state) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double uniform() noexcept;
  /// Uniform on [lo, hi): lo + (hi - lo) * uniform().
  double uniform(double lo, double hi) noexcept;
  /// True iff uniform() < p. Always consumes exactly one draw.
  bool bernoulli(double p) noexcept;
  /// Standard normal via Box-Muller (cosine branch), two draws per call.
  double normal() noexcept;
  /// exp(mu + sigma * normal()).
  double lognormal(double mu, double sigma) noexcept;
  /// Knuth's product-of-uniforms method, applied in chunks of rate <= 16.
  std::uint64_t poisson(double rate) noexcept;
  /// Unbiased integer in [0, n) by rejection on the low-end remainder.
  std::uint64_t below(std::uint64_t n) noexcept;

  const State& state() const noexcept { return s_; }

  bool operator==(const Rng&) const = default;

 private:
  State s_;
};

/// Stream for (seed, label): Rng(splitmix64_mix(seed) ^ fnv1a64(label)).
Rng derive_rng(std::uint64_t seed, std::string_view label) noexcept;

/// Counter-based episode seed: splitmix64_mix(master + (index + 1) * gamma),
/// i.e. the index-th output of SplitMix64(master).
constexpr std::uint64_t episode_seed(std::uint64_t master,
                                     std::uint64_t index) noexcept {
  return splitmix64_mix(master + (index + 1) * kGoldenGamma);
}

}  // namespace agisim
