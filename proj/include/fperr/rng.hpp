#pragma once

#include <cstdint>

namespace fperr {

// SplitMix64 (Steele/Lea/Flood). Chosen because it is trivially portable and
// bit-reproducible across languages and platforms, and because each
// (seed, stream) pair can be hashed independently — every partition interval
// gets its own stream, so adding or clipping intervals never shifts the
// samples of the others.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// Advance the state by the golden-ratio increment and return the mixed
/// output. Unsigned wraparound is the intended modular arithmetic.
[[nodiscard]] inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Hash two words into one output: the first draw of the stream seeded by
/// (a, b). Used as mix2(seed, interval_index) and, for multivariate lattices,
/// mix2(mix2(seed, 1000 + dim), sample_index).
[[nodiscard]] inline std::uint64_t mix2(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t s = a * kGolden + b;
    return splitmix64(s);
}

/// Map a 64-bit word to a double in [0, 1) using the top 53 bits.
[[nodiscard]] inline double u01(std::uint64_t z) noexcept {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

} // namespace fperr
