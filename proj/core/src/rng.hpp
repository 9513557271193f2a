#pragma once

#include <cstdint>
#include <random>

namespace poolrisk::detail {

// splitmix64 finalizer; decorrelates (seed, stream) pairs so every
// replication or trial gets its own mt19937_64 stream.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

// Uniform in [0, 1) from the top 53 bits; bit-reproducible, no
// distribution object involved.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace poolrisk::detail
