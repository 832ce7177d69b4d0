#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace slsim {

using Rng = std::mt19937_64;

// Uniform double in [0,1) built from the top 53 bits of one engine draw.
// std::uniform_real_distribution is implementation-defined, which would
// break the bitwise reproducibility contract across standard libraries.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased-enough integer in [0, bound) for shuffles; determinism matters
// here, statistical perfection does not.
inline std::size_t uniform_below(Rng& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
}

// In-place Fisher-Yates. std::shuffle is implementation-defined, so the
// loop is spelled out.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = uniform_below(rng, i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace slsim
