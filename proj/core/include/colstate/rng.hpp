#pragma once

#include <cstdint>
#include <random>

namespace colstate {

// All randomized operations draw through these helpers instead of the
// std distributions, so that a fixed seed gives identical streams on
// every platform and standard library.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Task seed for ensemble member `index` under a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL + index * 0xd1b54a32d192ed03ULL);
    splitmix64(s);
    return splitmix64(s);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    std::uint64_t s = seed;
    // Decorrelate trivially related seeds before feeding the engine.
    return std::mt19937_64(splitmix64(s));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform double in the open interval (0, 1).
inline double uniform_open(std::mt19937_64& eng) {
    double u;
    do {
        u = uniform_double(eng);
    } while (u == 0.0);
    return u;
}

// Unbiased uniform integer in [0, n).
inline std::uint64_t uniform_index(std::mt19937_64& eng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % n;
}

}  // namespace colstate
