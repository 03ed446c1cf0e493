#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>

namespace diamond {

/// SplitMix64 (Steele, Lea, Flood 2014). Every random phase in the library
/// comes from this generator; the identifier below is written into output
/// metadata so that files can be traced back to the exact stream.
class SplitMix64 {
 public:
  static constexpr std::string_view kGeneratorId = "splitmix64";
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform phase in [0, 2*pi).
  constexpr double next_phase() { return 2.0 * std::numbers::pi * next_unit(); }

  /// Seed of the k-th child stream. Children of one parent never share a state
  /// sequence start, and split(s, k) is a pure function of (s, k).
  static constexpr std::uint64_t split(std::uint64_t seed, std::uint64_t k) {
    return mix(seed ^ mix((k + 1) * kGamma));
  }

 private:
  std::uint64_t state_;
};

}  // namespace diamond
