#pragma once

#include <cstddef>
#include <cstdint>

namespace monochrome {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: word i of stream (seed, key) is a pure function of
/// (seed, key, i). Streams for different keys can be consumed in any order
/// and on any thread with identical results.
class KeyedStream {
 public:
  constexpr KeyedStream(std::uint64_t seed, std::uint64_t key)
      : base_(mix64(seed ^ mix64(key ^ 0x6a09e667f3bcc909ULL))) {}

  constexpr std::uint64_t next() {
    return mix64(base_ + 0x9e3779b97f4a7c15ULL * (++counter_));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

/// Exactly uniform draws from {0, ..., colors-1}, several per 64-bit word.
///
/// A word is split into k base-`colors` digits when it falls below the
/// largest multiple of colors^k; otherwise it is rejected and redrawn.
class ColorSampler {
 public:
  explicit ColorSampler(std::uint32_t colors) : colors_(colors) {
    std::uint64_t block = 1;
    unsigned digits = 0;
    while (block <= (std::uint64_t{1} << 56) / colors_) {
      block *= colors_;
      ++digits;
    }
    block_ = block;
    digits_per_word_ = digits;
    // largest multiple of block representable in [0, 2^64)
    limit_ = (UINT64_MAX / block_) * block_;
    power_of_two_ = (colors_ & (colors_ - 1)) == 0;
    if (power_of_two_) {
      bits_ = 0;
      while ((1u << bits_) < colors_) ++bits_;
      digits_per_word_ = 64 / bits_;
    }
  }

  std::uint32_t colors() const { return colors_; }

  /// Writes `count` colors into out[0..count).
  template <typename Out>
  void fill(KeyedStream& stream, Out* out, std::size_t count) const {
    std::size_t i = 0;
    if (power_of_two_) {
      const std::uint64_t mask = colors_ - 1;
      while (i < count) {
        std::uint64_t w = stream.next();
        for (unsigned d = 0; d < digits_per_word_ && i < count; ++d) {
          out[i++] = static_cast<Out>(w & mask);
          w >>= bits_;
        }
      }
      return;
    }
    while (i < count) {
      std::uint64_t w = stream.next();
      if (w >= limit_) continue;
      w %= block_;
      for (unsigned d = 0; d < digits_per_word_ && i < count; ++d) {
        out[i++] = static_cast<Out>(w % colors_);
        w /= colors_;
      }
    }
  }

 private:
  std::uint32_t colors_;
  std::uint64_t block_ = 1;
  std::uint64_t limit_ = 0;
  unsigned digits_per_word_ = 0;
  unsigned bits_ = 0;
  bool power_of_two_ = false;
};

}  // namespace monochrome
