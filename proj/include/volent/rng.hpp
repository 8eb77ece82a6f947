#ifndef VOLENT_RNG_HPP
#define VOLENT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

// Seed-derived substreams for block-parallel sampling. Every block draws
// from its own generator seeded by (seed, block index) only, so results do
// not depend on how blocks are scheduled across threads.

namespace volent::rng {

inline uint64_t splitmix64(uint64_t state) {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t substream_seed(uint64_t seed, uint64_t index) {
    return splitmix64(seed ^ (0xA0761D6478BD642FULL * (index + 1)));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller; two draws per variate keeps the
/// consumption pattern deterministic.
inline double standard_normal(std::mt19937_64& gen) {
    const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace volent::rng

#endif
