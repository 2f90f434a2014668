#pragma once

#include <cstdint>
#include <cmath>

namespace commdet {

// splitmix64 (Steele, Lea, Flood 2014). Counter-based: the state advances by a
// fixed odd constant and the output is a bijective mix of the counter, so any
// 64-bit seed gives an independent-looking stream.  This is the single PRNG of
// the project; reproducibility across platforms and thread counts is a
// contract, so no std:: engines are used anywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1]; safe as an argument to log().
    double next_double_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        // Lemire-style threshold rejection.
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream derivation contract: replicate (or sub-stream) r of a run with master
// seed s is seeded with derive_seed(s, r).  Every module that consumes
// randomness receives an explicit derived seed, never a shared generator, so
// results are independent of scheduling and thread count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

}  // namespace commdet
