#pragma once

#include <cstdint>
#include <random>

namespace corrq {

/// Seeded uniform double in [0,1) built directly from 53 engine bits, so
/// reports do not depend on the standard library's distribution internals.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace corrq
