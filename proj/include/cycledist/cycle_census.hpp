#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <thread>
#include <type_traits>
#include <vector>

#include "cycledist/errors.hpp"
#include "cycledist/ldpc_graph.hpp"
#include "cycledist/turbo_graph.hpp"

namespace cycledist {

// count per exact cycle length k; lengths with zero count are absent
using CycleCounts = std::map<int, std::uint64_t>;

namespace detail {

// Depth-first search over the undirected graph from a start node. A cycle is
// recorded when the walk returns to the start after at least 3 edges; edge
// directions play no role. Each simple cycle is traversed once per direction,
// so only closures whose second vertex id is below the last vertex id are
// counted. Edge spans accumulate into the reported length (spans are 1,
// except turbo cross edges counted through their information-bit node, which
// span 2); the walk is pruned once no closure could stay within k_max.
template <class Graph>
class CycleDfs {
public:
    CycleDfs(const Graph& graph, int cross_span, int k_max)
        : graph_(graph), cross_span_(cross_span), k_max_(k_max),
          visited_(graph.num_nodes(), 0), counts_(static_cast<std::size_t>(k_max) + 1, 0) {}

    CycleCounts run(std::uint32_t start) {
        std::fill(counts_.begin(), counts_.end(), 0);
        start_ = start;
        visited_[start] = 1;
        graph_.for_each_neighbor(start, cross_span_, [&](std::uint32_t next, int span) {
            first_step_ = next;
            if (span + 1 <= k_max_ && !visited_[next]) {
                visited_[next] = 1;
                extend(next, span, 1);
                visited_[next] = 0;
            }
        });
        visited_[start] = 0;

        CycleCounts out;
        for (int k = 0; k <= k_max_; ++k)
            if (counts_[k] != 0) out[k] = counts_[k];
        return out;
    }

private:
    void extend(std::uint32_t node, int length, int edges) {
        graph_.for_each_neighbor(node, cross_span_, [&](std::uint32_t next, int span) {
            if (next == start_) {
                if (edges >= 2 && first_step_ < node && length + span <= k_max_)
                    ++counts_[length + span];
                return;
            }
            if (!visited_[next] && length + span + 1 <= k_max_) {
                visited_[next] = 1;
                extend(next, length + span, edges + 1);
                visited_[next] = 0;
            }
        });
    }

    const Graph& graph_;
    int cross_span_;
    int k_max_;
    std::uint32_t start_ = 0;
    std::uint32_t first_step_ = 0;
    std::vector<char> visited_;
    std::vector<std::uint64_t> counts_;
};

template <class Graph>
CycleCounts count_cycles_impl(const Graph& graph, std::uint32_t node, int k_max, int cross_span) {
    if (node >= graph.num_nodes())
        throw invalid_parameter("count_cycles_at_node: node " + std::to_string(node) +
                                " not in graph");
    if (k_max < 3) throw invalid_parameter("count_cycles_at_node: k_max must be >= 3");
    CycleDfs<Graph> dfs(graph, cross_span, k_max);
    return dfs.run(node);
}

} // namespace detail

inline CycleCounts count_cycles_at_node(const TurboGraph& g, std::uint32_t node, int k_max) {
    return detail::count_cycles_impl(g, node, k_max, 1);
}

inline CycleCounts count_cycles_at_node(const LdpcGraph& g, std::uint32_t node, int k_max) {
    return detail::count_cycles_impl(g, node, k_max, 1);
}

// Same cycles, but each cross edge contributes 2 to the length (the original
// decoding graph routes every cross connection through an information-bit
// node). Minimum length is 6: the 4-cycle has two cross edges.
inline CycleCounts count_cycles_with_u_nodes(const TurboGraph& g, std::uint32_t node, int k_max) {
    return detail::count_cycles_impl(g, node, k_max, 2);
}

template <class Graph>
std::optional<int> min_cycle_length_at_node(const Graph& g, std::uint32_t node, int k_max) {
    const CycleCounts counts = count_cycles_at_node(g, node, k_max);
    if (counts.empty()) return std::nullopt;
    return counts.begin()->first;
}

// Per-start-node exhaustive counts over a node sample.
struct CycleCensus {
    int k_max = 0;
    std::vector<std::uint32_t> node_sample;
    std::map<std::uint32_t, CycleCounts> per_node;

    // fraction of sampled nodes with no cycle of length <= k
    double frac_no_cycle_leq(int k) const {
        std::size_t clean = 0;
        for (const auto& [node, counts] : per_node) {
            bool has = false;
            for (const auto& [len, cnt] : counts)
                if (len <= k && cnt > 0) { has = true; break; }
            clean += !has;
        }
        return per_node.empty() ? 1.0 : static_cast<double>(clean) / static_cast<double>(per_node.size());
    }
};

struct CensusOptions {
    bool with_u_nodes = false;  // TurboGraph only
    int threads = 1;
};

template <class Graph>
CycleCensus census(const Graph& graph, const std::vector<std::uint32_t>& node_sample, int k_max,
                   CensusOptions options = {}) {
    if (node_sample.empty()) throw invalid_parameter("census: empty node sample");
    if (k_max < 3) throw invalid_parameter("census: k_max must be >= 3");
    for (std::uint32_t node : node_sample)
        if (node >= graph.num_nodes())
            throw invalid_parameter("census: node " + std::to_string(node) + " not in graph");
    const int cross_span = options.with_u_nodes ? 2 : 1;
    if constexpr (!std::is_same_v<Graph, TurboGraph>) {
        if (options.with_u_nodes)
            throw invalid_parameter("census: U-node counting applies to turbo graphs only");
    }

    std::vector<CycleCounts> results(node_sample.size());
    const int threads = std::max(1, options.threads);
    if (threads == 1 || node_sample.size() == 1) {
        detail::CycleDfs<Graph> dfs(graph, cross_span, k_max);
        for (std::size_t i = 0; i < node_sample.size(); ++i) results[i] = dfs.run(node_sample[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            detail::CycleDfs<Graph> dfs(graph, cross_span, k_max);
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= node_sample.size()) return;
                results[i] = dfs.run(node_sample[i]);
            }
        };
        std::vector<std::thread> pool;
        const int spawn = static_cast<int>(std::min<std::size_t>(threads, node_sample.size()));
        pool.reserve(static_cast<std::size_t>(spawn));
        for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    CycleCensus out;
    out.k_max = k_max;
    out.node_sample = node_sample;
    for (std::size_t i = 0; i < node_sample.size(); ++i)
        out.per_node[node_sample[i]] = std::move(results[i]);
    return out;
}

// CSV: node_id,k,count
inline void write_census_csv(const CycleCensus& c, std::ostream& out) {
    out << "node_id,k,count\n";
    for (const auto& [node, counts] : c.per_node)
        for (const auto& [k, count] : counts) out << node << ',' << k << ',' << count << "\n";
}

// CSV: k,frac_nodes_no_cycle_leq_k,sample_size
inline void write_census_summary_csv(const CycleCensus& c, std::ostream& out) {
    out << "k,frac_nodes_no_cycle_leq_k,sample_size\n";
    char buf[32];
    for (int k = 4; k <= c.k_max; ++k) {
        std::snprintf(buf, sizeof buf, "%.6f", c.frac_no_cycle_leq(k));
        out << k << ',' << buf << ',' << c.per_node.size() << "\n";
    }
}

} // namespace cycledist
