#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qrep {

/// splitmix64 finalizer: bijective 64-bit mixer with good avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic stream derived from a (seed, trial, station, species) key.
/// The key is folded through mix64 so streams with different keys are
/// statistically independent regardless of which thread draws from them.
class KeyedStream {
  public:
    KeyedStream(std::uint64_t seed, std::uint64_t trial,
                std::uint64_t station, std::uint64_t species)
        : state_(mix64(mix64(mix64(mix64(seed) + trial) + station) + species)) {}

    explicit KeyedStream(std::uint64_t seed) : state_(mix64(seed)) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

/// i.i.d. Bernoulli(p) word over n bits (bit i = outcome i), drawn by
/// geometric gap sampling: the number of draws is ~1 + n*p instead of n,
/// which is what makes large blocks at small p cheap.
inline std::uint32_t sample_error_word(KeyedStream& rng, int n, double p) {
    if (n < 1 || n > 32) throw std::invalid_argument("sample_error_word: n out of range");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_error_word: p out of range");
    if (p == 0.0) return 0;
    if (p == 1.0) return (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
    const double log1mp = std::log1p(-p);
    std::uint32_t word = 0;
    double pos = -1.0;  // index of the last flipped bit
    for (;;) {
        double u = rng.next_unit();
        // skip = floor(log(1-u)/log(1-p)) >= 0, geometric gap between hits
        pos += 1.0 + std::floor(std::log1p(-u) / log1mp);
        if (pos >= static_cast<double>(n)) return word;
        word |= (1u << static_cast<int>(pos));
    }
}

}  // namespace qrep
