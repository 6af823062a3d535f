#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cycledist/errors.hpp"
#include "cycledist/ldpc_graph.hpp"
#include "cycledist/turbo_graph.hpp"

namespace cycledist {

// Text formats (lossless round-trip):
//
//   turbo n=<n> seed=<seed> s=<S|0>
//   f(0) f(1) ... f(n-1)
//
//   ldpc n=<n> w=<w> dv=<d_v> dc=<d_c> seed=<seed>
//   <var> <check>          (one edge per line)

using AnyGraph = std::variant<TurboGraph, LdpcGraph>;

inline void save_graph(const TurboGraph& g, std::ostream& out) {
    out << "turbo n=" << g.n() << " seed=" << g.seed() << " s=" << g.spread() << "\n";
    const auto& map = g.perm().map;
    for (std::uint32_t i = 0; i < map.size(); ++i) out << map[i] << (i + 1 < map.size() ? ' ' : '\n');
}

inline void save_graph(const LdpcGraph& g, std::ostream& out) {
    out << "ldpc n=" << g.n() << " w=" << g.w() << " dv=" << g.dv() << " dc=" << g.dc()
        << " seed=" << g.seed() << "\n";
    for (const auto& [var, chk] : g.edges()) out << var << ' ' << chk << "\n";
}

namespace detail {

inline std::uint64_t parse_field(std::istringstream& header, const std::string& key) {
    std::string token;
    if (!(header >> token) || token.rfind(key + "=", 0) != 0)
        throw invalid_parameter("graph header: expected " + key + "=<value>");
    try {
        return std::stoull(token.substr(key.size() + 1));
    } catch (const std::exception&) {
        throw invalid_parameter("graph header: bad value in " + token);
    }
}

} // namespace detail

inline AnyGraph load_graph(std::istream& in) {
    std::string header_line;
    if (!std::getline(in, header_line)) throw invalid_parameter("graph file: empty input");
    std::istringstream header(header_line);
    std::string kind;
    header >> kind;

    if (kind == "turbo") {
        const auto n = static_cast<std::uint32_t>(detail::parse_field(header, "n"));
        const auto seed = detail::parse_field(header, "seed");
        const auto spread = static_cast<std::uint32_t>(detail::parse_field(header, "s"));
        Permutation perm;
        perm.map.resize(n);
        for (std::uint32_t i = 0; i < n; ++i)
            if (!(in >> perm.map[i])) throw invalid_parameter("turbo graph: truncated permutation");
        if (!perm.is_bijection()) throw invalid_parameter("turbo graph: map is not a bijection");
        return TurboGraph(std::move(perm), seed, spread);
    }
    if (kind == "ldpc") {
        const auto n = static_cast<std::uint32_t>(detail::parse_field(header, "n"));
        const auto w = static_cast<std::uint32_t>(detail::parse_field(header, "w"));
        const auto dv = static_cast<std::uint32_t>(detail::parse_field(header, "dv"));
        const auto dc = static_cast<std::uint32_t>(detail::parse_field(header, "dc"));
        const auto seed = detail::parse_field(header, "seed");
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        edges.reserve(std::size_t(n) * dv);
        std::uint32_t var, chk;
        while (in >> var >> chk) {
            if (var >= n || chk >= w) throw invalid_parameter("ldpc graph: edge index out of range");
            edges.emplace_back(var, chk);
        }
        if (edges.size() != std::size_t(n) * dv)
            throw invalid_parameter("ldpc graph: expected " + std::to_string(std::size_t(n) * dv) +
                                    " edges, got " + std::to_string(edges.size()));
        return LdpcGraph(n, w, dv, dc, std::move(edges), seed);
    }
    throw invalid_parameter("graph file: unknown kind '" + kind + "'");
}

} // namespace cycledist
