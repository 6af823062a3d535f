#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cycledist/errors.hpp"
#include "cycledist/prng.hpp"

namespace cycledist {

// Regular bipartite graph: n variable nodes of degree d_v, w check nodes of
// degree d_c, n*d_v = w*d_c, no parallel edges.
//
// Node ids: variable v -> v, check c -> n + c.
class LdpcGraph {
public:
    LdpcGraph(std::uint32_t n, std::uint32_t w, std::uint32_t dv, std::uint32_t dc,
              std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
              std::uint64_t seed = 0)
        : n_(n), w_(w), dv_(dv), dc_(dc), edges_(std::move(edges)), seed_(seed) {
        build_adjacency();
    }

    std::uint32_t n() const { return n_; }
    std::uint32_t w() const { return w_; }
    std::uint32_t dv() const { return dv_; }
    std::uint32_t dc() const { return dc_; }
    std::uint32_t num_nodes() const { return n_ + w_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }

    template <class Fn>
    void for_each_neighbor(std::uint32_t v, int /*cross_span*/, Fn&& fn) const {
        for (std::uint32_t i = offsets_[v]; i < offsets_[v + 1]; ++i) fn(adjacency_[i], 1);
    }

    std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }

private:
    void build_adjacency() {
        const std::uint32_t total = n_ + w_;
        offsets_.assign(total + 1, 0);
        for (const auto& [var, chk] : edges_) {
            ++offsets_[var + 1];
            ++offsets_[n_ + chk + 1];
        }
        for (std::uint32_t i = 0; i < total; ++i) offsets_[i + 1] += offsets_[i];
        adjacency_.resize(2 * edges_.size());
        std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
        for (const auto& [var, chk] : edges_) {
            adjacency_[cursor[var]++] = n_ + chk;
            adjacency_[cursor[n_ + chk]++] = var;
        }
    }

    std::uint32_t n_, w_, dv_, dc_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    std::uint64_t seed_;
    std::vector<std::uint32_t> offsets_;    // CSR over variable ids then check ids
    std::vector<std::uint32_t> adjacency_;
};

// Configuration model: the n*d_v variable sockets are shuffled against the
// check sockets taken in order. A draw containing a parallel edge is thrown
// away and resampled from scratch (parallel edges would be length-2 cycles),
// up to max_restarts attempts. Deterministic given (n, d_v, d_c, seed).
inline LdpcGraph build_ldpc_graph(std::uint32_t n, std::uint32_t dv, std::uint32_t dc,
                                  std::uint64_t seed, int max_restarts = 1000) {
    if (n == 0 || dv == 0 || dc == 0)
        throw invalid_parameter("build_ldpc_graph: n, d_v, d_c must be >= 1");
    const std::uint64_t sockets = std::uint64_t(n) * dv;
    if (sockets % dc != 0)
        throw invalid_parameter("build_ldpc_graph: d_c must divide n*d_v (n=" + std::to_string(n) +
                                " d_v=" + std::to_string(dv) + " d_c=" + std::to_string(dc) + ")");
    if (max_restarts < 1) throw invalid_parameter("build_ldpc_graph: max_restarts must be >= 1");
    const std::uint32_t w = static_cast<std::uint32_t>(sockets / dc);

    rng_engine rng(seed);
    std::vector<std::uint32_t> var_sockets(sockets);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(sockets);

    for (int attempt = 1; attempt <= max_restarts; ++attempt) {
        for (std::uint64_t i = 0; i < sockets; ++i)
            var_sockets[i] = static_cast<std::uint32_t>(i / dv);
        stable_shuffle(var_sockets, rng);
        for (std::uint64_t i = 0; i < sockets; ++i)
            edges[i] = {var_sockets[i], static_cast<std::uint32_t>(i / dc)};
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) == edges.end())
            return LdpcGraph(n, w, dv, dc, edges, seed);
    }
    throw construction_failure("build_ldpc_graph: parallel-edge-free graph not found for n=" +
                                   std::to_string(n) + " d_v=" + std::to_string(dv) +
                                   " d_c=" + std::to_string(dc) + " after " +
                                   std::to_string(max_restarts) + " restarts",
                               max_restarts);
}

} // namespace cycledist
