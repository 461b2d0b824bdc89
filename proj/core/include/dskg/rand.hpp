// Deterministic sampling helpers. std::uniform_real_distribution is
// implementation-defined, so fixtures that must be byte-identical across
// toolchains draw doubles directly from the mt19937_64 bit stream.
#pragma once

#include <cstdint>
#include <random>

namespace dskg::rng {

// Uniform double in [0,1) from the top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

}  // namespace dskg::rng
