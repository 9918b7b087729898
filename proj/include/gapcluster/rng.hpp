#pragma once

#include <cmath>
#include <cstdint>

namespace gapcluster {

// Seeded random streams with a frozen cross-platform contract. Everything a
// generator or reference sampler draws is defined in terms of raw 64-bit
// outputs of xoshiro256** seeded via SplitMix64, so results are reproducible
// bit-for-bit on any conforming platform. The derivation scheme below is part
// of the stable interface: reports produced with a given seed must not change
// across releases.
//
//   derive_seed(master, i) = splitmix64 step of (master XOR 0x9E3779B97F4A7C15 * (i+1))
//   stream state           = four successive SplitMix64 outputs of its seed
//   uniform01()            = (next_u64() >> 11) * 2^-53, in [0, 1)
//   normal()               = Box-Muller on exactly two next_u64() draws

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives the seed for sub-stream `index` of a master seed. Order-free:
/// stream i can be created without touching streams 0..i-1.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t state = master_seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return splitmix64_next(state);
}

/// xoshiro256** 1.0 (Blackman & Vigna), seeded from SplitMix64.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 significant bits. One next_u64() per call.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double on [lo, hi]; lo == hi yields the constant.
    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    /// Standard normal via basic Box-Muller. Consumes exactly two
    /// next_u64() draws per call; no spare value is cached.
    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1]: log stays finite
        const double u2 = uniform01();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// Stream for sub-stream `index` of `master_seed`.
inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
    return RngStream(derive_seed(master_seed, index));
}

} // namespace gapcluster
