#pragma once

#include <cstdint>
#include <limits>

namespace frogcrit {

/// SplitMix64 (Steele, Lea & Flood). Small, splittable through `derive`, and
/// fully specified, so streams are reproducible across platforms and compilers.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in the open interval (0, 1), 53 bits of resolution.
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n) by multiply-shift.
  std::uint64_t below(std::uint64_t n) noexcept {
    __extension__ typedef unsigned __int128 u128;
    return static_cast<std::uint64_t>((static_cast<u128>((*this)()) * n) >> 64);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Key for an independent stream derived from a parent key and a label.
  static constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t label) noexcept {
    return mix(key ^ mix(label + kGamma));
  }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

} // namespace frogcrit
