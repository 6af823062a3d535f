#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cycledist/errors.hpp"
#include "cycledist/permutation.hpp"

namespace cycledist {

// Two parallel directed chains of n nodes plus n undirected cross edges
// given by a permutation: top node i connects to bottom node f(i).
//
// Node ids: top chain (0,i) -> i, bottom chain (1,i) -> n + i.
// Every internal node has degree 3, boundary nodes degree 2.
class TurboGraph {
public:
    explicit TurboGraph(Permutation perm, std::uint64_t seed = 0, std::uint32_t spread = 0)
        : perm_(std::move(perm)), inv_(perm_.inverse()), seed_(seed), spread_(spread) {
        if (perm_.n() == 0) throw invalid_parameter("TurboGraph: empty permutation");
    }

    std::uint32_t n() const { return perm_.n(); }
    std::uint32_t num_nodes() const { return 2 * perm_.n(); }
    const Permutation& perm() const { return perm_; }
    std::uint64_t seed() const { return seed_; }
    std::uint32_t spread() const { return spread_; }  // S of the S-random construction, 0 if plain

    std::uint32_t node_id(int chain, std::uint32_t pos) const {
        return static_cast<std::uint32_t>(chain) * n() + pos;
    }

    // Neighbors with the edge's span: chain edges span 1; the cross edge
    // spans `cross_span` (2 when the information-bit node in the middle of
    // each cross connection is counted, 1 otherwise).
    template <class Fn>
    void for_each_neighbor(std::uint32_t v, int cross_span, Fn&& fn) const {
        const std::uint32_t nn = n();
        const std::uint32_t pos = v < nn ? v : v - nn;
        if (v < nn) {  // top chain
            if (pos > 0) fn(v - 1, 1);
            if (pos + 1 < nn) fn(v + 1, 1);
            fn(nn + perm_.map[pos], cross_span);
        } else {       // bottom chain
            if (pos > 0) fn(v - 1, 1);
            if (pos + 1 < nn) fn(v + 1, 1);
            fn(inv_[pos], cross_span);
        }
    }

    std::uint32_t degree(std::uint32_t v) const {
        const std::uint32_t pos = v < n() ? v : v - n();
        return (pos == 0 || pos + 1 == n()) ? (n() == 1 ? 1u : 2u) : 3u;
    }

private:
    Permutation perm_;
    std::vector<std::uint32_t> inv_;
    std::uint64_t seed_;
    std::uint32_t spread_;
};

inline TurboGraph build_turbo_graph(Permutation perm, std::uint64_t seed = 0,
                                    std::uint32_t spread = 0) {
    if (!perm.is_bijection()) throw invalid_parameter("build_turbo_graph: map is not a bijection");
    return TurboGraph(std::move(perm), seed, spread);
}

inline TurboGraph gen_random_turbo_graph(std::uint32_t n, std::uint64_t seed) {
    return TurboGraph(gen_random_permutation(n, seed), seed, 0);
}

inline TurboGraph gen_s_random_turbo_graph(std::uint32_t n, std::uint32_t spread,
                                           std::uint64_t seed, int max_restarts) {
    return TurboGraph(gen_s_random_permutation(n, spread, seed, max_restarts), seed, spread);
}

} // namespace cycledist
