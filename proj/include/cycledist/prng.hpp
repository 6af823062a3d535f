#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cycledist/errors.hpp"

namespace cycledist {

// All randomized constructions draw from std::mt19937_64, whose algorithm is
// pinned by the standard, through the helpers below. std::shuffle and the
// std::*_distribution classes are implementation-defined and would break the
// bit-for-bit reproducibility contract, so they are not used anywhere.

using rng_engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Uniform draw from [0, bound) by masked rejection.
inline std::uint64_t bounded_uint(rng_engine& rng, std::uint64_t bound) {
    if (bound == 0) throw invalid_parameter("bounded_uint: bound must be positive");
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;  mask |= mask >> 2;  mask |= mask >> 4;
    mask |= mask >> 8;  mask |= mask >> 16; mask |= mask >> 32;
    for (;;) {
        std::uint64_t v = rng() & mask;
        if (v < bound) return v;
    }
}

// Fisher-Yates, descending, using bounded_uint for index draws.
template <class T>
void stable_shuffle(std::vector<T>& values, rng_engine& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_uint(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

// Sample `count` distinct values from [0, population) (partial Fisher-Yates).
inline std::vector<std::uint32_t> sample_without_replacement(std::uint32_t population,
                                                             std::uint32_t count,
                                                             rng_engine& rng) {
    if (count > population)
        throw invalid_parameter("sample_without_replacement: count exceeds population");
    std::vector<std::uint32_t> pool(population);
    for (std::uint32_t i = 0; i < population; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t j = i + static_cast<std::uint32_t>(bounded_uint(rng, population - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

} // namespace cycledist
