#pragma once

#include <cstdint>
#include <random>

namespace hetnet {

// SplitMix64 finalizer; used to derive independent generator seeds.
constexpr std::uint64_t splitMix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Substream seeds depend only on (seed, unit, stream), so a work unit draws
// the same numbers whichever thread runs it.
enum class Stream : std::uint64_t { MacroSites = 1, SmallSites = 2, Path = 3, Fading = 4, Transect = 5 };

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t unit, Stream s) {
    const std::uint64_t a = splitMix64(seed ^ splitMix64(unit ^ splitMix64(static_cast<std::uint64_t>(s))));
    std::seed_seq seq{std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(unit), std::uint32_t(s)};
    return std::mt19937_64(seq);
}

}  // namespace hetnet
