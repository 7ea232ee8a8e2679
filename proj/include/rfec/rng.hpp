#pragma once

#include <cstdint>

namespace rfec {

// Counter-based pseudo-random primitives. Every draw is a pure function of
// (seed, stream, counter), so simulations can be split across workers and
// replayed exactly. The mixer is the splitmix64 finalizer.

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t h = mix64(seed ^ 0xD1B54A32D192ED03ull);
    h = mix64(h ^ stream);
    h = mix64(h ^ counter);
    return h;
}

// Derive an independent stream id from a base stream and an index.
inline std::uint64_t substream(std::uint64_t base, std::uint64_t index) {
    return mix64(base ^ (index * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull));
}

// Uniform double in [0, 1) from 53 high bits.
inline double u01(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1), never returning either endpoint.
inline double u01_open(std::uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rfec
