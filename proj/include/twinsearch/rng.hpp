#ifndef TWINSEARCH_RNG_HPP
#define TWINSEARCH_RNG_HPP

#include <cstdint>

namespace twinsearch {

// Seedable counter-based 64-bit generator: output i is a splitmix64-style
// hash of (seed, i). Deterministic across platforms, cheap to fork by
// deriving child seeds with mix().
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() { return mix(seed_ + counter_++ * 0x9E3779B97F4A7C15ULL); }

    // Uniform in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace twinsearch

#endif
