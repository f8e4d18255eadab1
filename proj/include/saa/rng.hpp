#pragma once

#include <cstdint>

// Deterministic pseudo-random machinery. Everything downstream (scenario
// generation, replication engines, validators) draws from SplitMix64 streams
// so that identical seeds give bit-identical samples on every platform.
//
// Generator: splitmix64 (Steele, Lea, Flood; public domain reference
// implementation at https://prng.di.unimi.it/splitmix64.c).

namespace saa::rng {

inline constexpr char kGeneratorId[] = "splitmix64";

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// 64-bit finalizer used for substream derivation (the splitmix64 output
// function applied to a raw value).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for the `index`-th substream of `master`. Mixing (never additive
// offsets) keeps streams from overlapping.
constexpr std::uint64_t substream(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + kGolden));
}

// Stream tags for auxiliary sample sets. Constraint scenario sets use the
// constraint position 0..C-1 as the substream index; these tags stay clear
// of that range.
inline constexpr std::uint64_t kObjectiveStreamTag = 0xFFFFFFFF00000001ull;
inline constexpr std::uint64_t kResimulateStreamTag = 0xFFFFFFFF00000002ull;

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return (next() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1]; safe to pass to log().
  double next_unit_pos() { return ((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace saa::rng
