#pragma once

#include <cstdint>

namespace imbalab {

// SplitMix64 (Steele, Lea & Flood; Vigna's reference constants) addressed by
// counter: draw n of the stream seeded with s equals the (n+1)-th output of the
// sequential generator started from state s.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Output number `counter` (0-based) of the stream `seed`.
  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t counter) noexcept {
    return mix(seed + (counter + 1) * kGamma);
  }

  constexpr std::uint64_t next() noexcept { return mix(state_ += kGamma); }

  /// Top 52 bits centred in their cell: exactly representable, strictly inside (0, 1).
  static constexpr double to_open_unit(std::uint64_t z) noexcept {
    return (static_cast<double>(z >> 12) + 0.5) * 0x1.0p-52;
  }

  double next_open_unit() noexcept { return to_open_unit(next()); }

  /// Integer in [0, bound) by multiply-shift; bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    __extension__ using wide = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<wide>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace imbalab
