#pragma once

#include <cstdint>
#include <string_view>

namespace ird {

// Counter-based generator: every draw is a pure function of
// (master_seed, round_index, unit id, lane), so rounds and trials can be
// evaluated in any order or in parallel with bit-identical results.

inline constexpr std::uint64_t kOutageLane = 0x0ULL;
inline constexpr std::uint64_t kJitterLane = 0xD1B54A32D192ED03ULL;

// SplitMix64 finalizer (no golden-ratio increment).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

struct RngSpec {
    std::uint64_t master_seed = 0;
};

// Uniform draw in [0,1), bit-exact across implementations.
constexpr double uniform01(std::uint64_t master_seed, std::uint64_t round_index,
                           std::string_view unit_id, std::uint64_t lane) {
    std::uint64_t h = fnv1a64(unit_id);
    std::uint64_t x = mix64(master_seed ^ mix64(round_index) ^ mix64(h ^ lane));
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace ird
