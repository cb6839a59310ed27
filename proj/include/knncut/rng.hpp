#pragma once

#include <array>
#include <cstdint>

namespace knncut {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// The stream is a pure function of (seed, counter), so clouds regenerate
/// bit-for-bit on every platform. Satisfies UniformRandomBitGenerator.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        counter_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return 0xFFFFFFFFu; }

  result_type operator()() noexcept {
    if (used_ == 4) {
      buffer_ = generate(counter_, key_);
      bump_counter();
      used_ = 0;
    }
    return buffer_[used_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = (*this)();
    const std::uint64_t lo = (*this)();
    return (hi << 32) | lo;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// The raw ten-round bijection on one counter block.
  static Block generate(Block ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  void bump_counter() noexcept {
    if (++counter_[0] == 0 && ++counter_[1] == 0 && ++counter_[2] == 0) ++counter_[3];
  }

  Key key_;
  Block counter_;
  Block buffer_{};
  int used_ = 4;
};

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(mix64(base) ^ a) ^ b);
}

}  // namespace knncut
