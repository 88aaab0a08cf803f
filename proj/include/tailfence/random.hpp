#pragma once

// Reproducible random streams.
//
// Every logical task (one sample, one replication of a study cell) owns an
// std::mt19937_64 whose seed is a SplitMix64 hash of the user seed and the
// task coordinates. mt19937_64 output is fixed by the C++ standard, and the
// uniform conversion below is done by hand, so a given seed yields the same
// draws on every conforming toolchain and for any thread count.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tailfence {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for the task identified by `coords`, a pure function of its inputs.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                           std::initializer_list<std::uint64_t> coords) noexcept
{
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t c : coords)
        h = splitmix64(h ^ splitmix64(c + 0x632BE59BD9B4E019ULL));
    return h;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> coords = {})
{
    return Engine(derive_seed(seed, coords));
}

/// Uniform on the open interval (0, 1): midpoints of the 2^53 grid.
/// Maps 64 random bits to the midpoint grid (k + 1/2) 2^-52, k < 2^52, which
/// lies strictly inside (0, 1).
inline constexpr double uniform_from_bits(std::uint64_t bits) noexcept
{
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

inline double uniform_open(Engine& eng) noexcept { return uniform_from_bits(eng()); }

} // namespace tailfence
