#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace treembed {

// Counter-based pseudorandom stream. Output i is a strong 64-bit hash of
// (key, i), so two streams with different keys are independent no matter how
// many values either has produced, and a stream can be forked ("split") into
// children without coordinating counters. All arithmetic is exact uint64, so
// a given seed produces the same byte stream on every platform — which is why
// this exists instead of std::mt19937 + std::distributions (the distributions
// are implementation-defined).
//
// The finalizer is the splitmix64 mixer, which passes BigCrush.
struct Rng {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  // FNV-1a, for naming sub-streams by purpose ("tree", "host", ...).
  static constexpr std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ull;
    }
    return h;
  }

  static constexpr Rng from_seed(std::uint64_t seed) {
    return Rng{mix(seed + kGolden), 0};
  }

  // Child stream. Depends only on (key, tag), not on draws already made, so
  // r.split(a) is reproducible at any time and r.split(a) != r.split(b) for
  // a != b with overwhelming probability.
  constexpr Rng split(std::uint64_t tag) const {
    return Rng{mix(key ^ mix(tag + 0x6A09E667F3BCC909ull)), 0};
  }
  constexpr Rng split(std::string_view tag) const { return split(hash_tag(tag)); }

  constexpr std::uint64_t next_u64() { return mix(key + (++counter) * kGolden); }

  // Uniform in [0, 1), 53-bit mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_double_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform in [0, n). Rejection sampling: no modulo bias.
  std::uint64_t next_below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= threshold) return x % n;
    }
  }

  int next_int(int n) { return static_cast<int>(next_below(static_cast<std::uint64_t>(n))); }

  bool bernoulli(double p) { return next_double() < p; }

  // Number of failures before the first success of a Bernoulli(p) stream,
  // capped at `cap` (the cap also absorbs float overflow for tiny p).
  // Requires 0 < p < 1; callers special-case the endpoints.
  std::uint64_t geometric_skip(double p, std::uint64_t cap) {
    assert(p > 0.0 && p < 1.0);
    const double r = std::floor(std::log(next_double_pos()) / std::log1p(-p));
    if (!(r < static_cast<double>(cap))) return cap;
    return static_cast<std::uint64_t>(r);
  }

  // Fisher-Yates.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_below(i)]);
    }
  }
};

}  // namespace treembed
