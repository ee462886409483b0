// Deterministic counter-based randomness. Every Monte Carlo draw comes from
// a stream keyed by (seed, stream ids), so reruns and reorderings of trials
// reproduce byte-identical results.
#pragma once

#include <cstdint>

namespace nilc {

class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  // splitmix64 step
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), unbiased by rejection
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ull) / n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  // uniform signed in [lo, hi]
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent stream for (seed, stream, trial).
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t trial) {
  return Rng(mix_key(mix_key(seed, stream), trial));
}

}  // namespace nilc
