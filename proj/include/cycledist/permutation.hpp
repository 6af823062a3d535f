#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "cycledist/errors.hpp"
#include "cycledist/prng.hpp"

namespace cycledist {

// A bijection f on {0..n-1}; the interleaver connecting the two chains of a
// turbo graph.
struct Permutation {
    std::vector<std::uint32_t> map;  // map[i] = f(i)

    std::uint32_t n() const { return static_cast<std::uint32_t>(map.size()); }

    std::uint32_t operator()(std::uint32_t i) const { return map[i]; }

    bool is_bijection() const {
        std::vector<std::uint32_t> sorted = map;
        std::sort(sorted.begin(), sorted.end());
        for (std::uint32_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i) return false;
        return true;
    }

    std::vector<std::uint32_t> inverse() const {
        std::vector<std::uint32_t> inv(map.size());
        for (std::uint32_t i = 0; i < map.size(); ++i) inv[map[i]] = i;
        return inv;
    }
};

inline Permutation identity_permutation(std::uint32_t n) {
    Permutation p;
    p.map.resize(n);
    std::iota(p.map.begin(), p.map.end(), 0u);
    return p;
}

// Uniform random permutation of {0..n-1}, deterministic given (n, seed).
inline Permutation gen_random_permutation(std::uint32_t n, std::uint64_t seed) {
    if (n == 0) throw invalid_parameter("gen_random_permutation: n must be >= 1");
    Permutation p = identity_permutation(n);
    rng_engine rng(seed);
    stable_shuffle(p.map, rng);
    return p;
}

// True iff |i-j| <= S implies |f(i)-f(j)| >= S for all i != j.
inline bool verify_s_property(const Permutation& perm, std::uint32_t spread) {
    if (spread == 0) throw invalid_parameter("verify_s_property: S must be >= 1");
    const std::uint32_t n = perm.n();
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t hi = std::min<std::uint64_t>(n, std::uint64_t(i) + spread + 1);
        for (std::uint32_t j = i + 1; j < hi; ++j) {
            const std::uint32_t d =
                perm.map[i] > perm.map[j] ? perm.map[i] - perm.map[j] : perm.map[j] - perm.map[i];
            if (d < spread) return false;
        }
    }
    return true;
}

namespace detail {

inline bool spread_apart(std::uint32_t a, std::uint32_t b, std::uint32_t spread) {
    return (a > b ? a - b : b - a) >= spread;
}

} // namespace detail

// S-random permutation: sequential greedy construction. Candidates are drawn
// uniformly from the values not yet placed; a candidate within distance S of
// any of the previous S placed values is rejected. After a run of
// max_consecutive_rejections rejections the stuck position is handed to a
// bounded exchange repair: move some earlier placed value w = f(j) to the
// frontier (legal when w clears the frontier's S-window) and refill slot j
// from the pool. Only when the repair budget is also exhausted does the whole
// construction restart, up to max_restarts attempts in total.
//
// The plain restart greedy stalls with probability near 1 once 2*S*S/n gets
// large (around 0.3 the unplaced values always end with a pair closer than S,
// which cannot legally occupy the final S slots); the frontier exchange is
// what makes spreads like S=100 at n=64000 constructible in milliseconds.
// Feasibility is still not guaranteed for every (n, S); S < sqrt(n/2) is the
// comfortable regime. The result always satisfies verify_s_property.
inline Permutation gen_s_random_permutation(std::uint32_t n, std::uint32_t spread,
                                            std::uint64_t seed, int max_restarts,
                                            int max_consecutive_rejections = 64) {
    if (n == 0) throw invalid_parameter("gen_s_random_permutation: n must be >= 1");
    if (spread == 0) throw invalid_parameter("gen_s_random_permutation: S must be >= 1");
    if (max_restarts < 1)
        throw invalid_parameter("gen_s_random_permutation: max_restarts must be >= 1");

    constexpr int kMaxRepairTries = 400;
    rng_engine rng(seed);
    std::vector<std::uint32_t> remaining;
    Permutation p;

    for (int attempt = 1; attempt <= max_restarts; ++attempt) {
        remaining.resize(n);
        std::iota(remaining.begin(), remaining.end(), 0u);
        p.map.clear();
        p.map.reserve(n);

        bool abandoned = false;
        for (std::uint32_t i = 0; i < n && !abandoned; ++i) {
            const std::uint32_t lookback = std::min(i, spread);
            int rejections = 0;
            bool placed = false;
            while (!placed) {
                const std::size_t idx =
                    static_cast<std::size_t>(bounded_uint(rng, remaining.size()));
                const std::uint32_t candidate = remaining[idx];
                bool ok = true;
                for (std::uint32_t back = 1; back <= lookback; ++back)
                    if (!detail::spread_apart(p.map[i - back], candidate, spread)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    p.map.push_back(candidate);
                    remaining[idx] = remaining.back();
                    remaining.pop_back();
                    placed = true;
                    break;
                }
                if (++rejections >= max_consecutive_rejections) break;
            }
            if (placed) continue;

            for (int t = 0; t < kMaxRepairTries && !placed; ++t) {
                const auto j = static_cast<std::uint32_t>(bounded_uint(rng, i));
                const std::uint32_t moved = p.map[j];
                bool frontier_ok = true;
                for (std::uint32_t back = 1; back <= lookback; ++back)
                    if (i - back != j &&
                        !detail::spread_apart(p.map[i - back], moved, spread)) {
                        frontier_ok = false;
                        break;
                    }
                if (!frontier_ok) continue;

                const std::size_t vidx =
                    static_cast<std::size_t>(bounded_uint(rng, remaining.size()));
                const std::uint32_t refill = remaining[vidx];
                bool slot_ok = true;
                const std::uint32_t lo = j > spread ? j - spread : 0;
                const std::uint32_t hi = std::min(i - 1, j + spread);
                for (std::uint32_t q = lo; q <= hi && slot_ok; ++q)
                    if (q != j && !detail::spread_apart(p.map[q], refill, spread)) slot_ok = false;
                // the refilled slot also faces the moved value at the
                // frontier when the two positions are within S
                if (slot_ok && i - j <= spread && !detail::spread_apart(moved, refill, spread))
                    slot_ok = false;
                if (!slot_ok) continue;

                p.map.push_back(moved);
                p.map[j] = refill;
                remaining[vidx] = remaining.back();
                remaining.pop_back();
                placed = true;
            }
            abandoned = !placed;
        }
        if (!abandoned) return p;
    }
    throw construction_failure("gen_s_random_permutation: no valid permutation for n=" +
                                   std::to_string(n) + " S=" + std::to_string(spread) +
                                   " after " + std::to_string(max_restarts) + " restarts",
                               max_restarts);
}

} // namespace cycledist
