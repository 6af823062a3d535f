#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "cycledist/errors.hpp"

namespace cycledist {

// Exact integer combinatorics of cycle templates ("pictures"): a picture is a
// cycle of k labeled edges with a distinguished start vertex, where each edge
// is a cross edge (X) or a directed chain edge (F/B), the m > 0 cross edges
// are even in number and pairwise non-adjacent, and the chain edges between
// two crosses share a direction. Intermediate products use 128-bit integers;
// k is capped at 64, which keeps every public count inside uint64_t.

inline constexpr int kMaxPictureLength = 64;

namespace detail {

using uint128 = unsigned __int128;

// binomial(x, y) with the convention 0 unless 0 <= y <= x.
inline uint128 binomial(long long x, long long y) {
    if (y < 0 || y > x) return 0;
    if (y > x - y) y = x - y;
    uint128 r = 1;
    for (long long i = 1; i <= y; ++i) {
        r *= static_cast<uint128>(x - y + i);
        r /= static_cast<uint128>(i);
    }
    return r;
}

inline std::uint64_t to_u64(uint128 v, const char* what) {
    if (v > static_cast<uint128>(UINT64_MAX)) throw invalid_parameter(std::string(what) + ": overflow");
    return static_cast<std::uint64_t>(v);
}

} // namespace detail

// P(a,b): ways to pick b pairwise non-adjacent edges from a path of a edges.
// Equals binomial(a-b+1, b); total on nonnegative arguments.
inline std::uint64_t path_choices(long long a, long long b) {
    if (a < 0 || b < 0) throw invalid_parameter("path_choices: arguments must be nonnegative");
    return detail::to_u64(detail::binomial(a - b + 1, b), "path_choices");
}

// C(a,b): ways to pick b pairwise non-adjacent edges from a cycle of a edges.
// Equals binomial(a-b-1, b-1) + binomial(a-b, b); same zero convention.
inline std::uint64_t cycle_choices(long long a, long long b) {
    if (a < 0 || b < 0) throw invalid_parameter("cycle_choices: arguments must be nonnegative");
    return detail::to_u64(detail::binomial(a - b - 1, b - 1) + detail::binomial(a - b, b),
                          "cycle_choices");
}

// N(k,m): number of distinct pictures of length k with m cross edges,
//   2^(m-1) * (k/(k-m)) * binomial(k-m, m)
// computed as 2^(m-1) * C(k,m) so every step stays integral.
inline std::uint64_t picture_count(int k, int m) {
    if (k < 4 || k > kMaxPictureLength)
        throw invalid_parameter("picture_count: k must be in [4, 64]");
    if (m <= 0 || m % 2 != 0 || 2 * m > k)
        throw invalid_parameter("picture_count: need m even, 0 < m, 2m <= k");
    const detail::uint128 c = detail::binomial(k - m - 1, m - 1) + detail::binomial(k - m, m);
    return detail::to_u64((detail::uint128(1) << (m - 1)) * c, "picture_count");
}

// N_k: total pictures of length k, summed over even m; approaches 2^(k-2).
inline std::uint64_t total_pictures(int k) {
    if (k < 4 || k > kMaxPictureLength)
        throw invalid_parameter("total_pictures: k must be in [4, 64]");
    detail::uint128 total = 0;
    for (int m = 2; 2 * m <= k; m += 2) {
        const detail::uint128 c = detail::binomial(k - m - 1, m - 1) + detail::binomial(k - m, m);
        total += (detail::uint128(1) << (m - 1)) * c;
    }
    return detail::to_u64(total, "total_pictures");
}

// --- explicit picture enumeration (test oracle scale) ---

enum class EdgeLabel : char { forward = 'F', backward = 'B', cross = 'X' };

struct Picture {
    std::vector<EdgeLabel> edges;  // cyclic, starting at the distinguished vertex

    int length() const { return static_cast<int>(edges.size()); }

    int cross_count() const {
        int m = 0;
        for (EdgeLabel e : edges) m += (e == EdgeLabel::cross);
        return m;
    }

    // Same cycle traversed the other way: edge order reversed, F and B swapped.
    Picture reversed() const {
        Picture r;
        r.edges.reserve(edges.size());
        for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
            EdgeLabel e = *it;
            if (e == EdgeLabel::forward) e = EdgeLabel::backward;
            else if (e == EdgeLabel::backward) e = EdgeLabel::forward;
            r.edges.push_back(e);
        }
        return r;
    }

    bool is_valid() const {
        const std::size_t k = edges.size();
        if (k < 4) return false;
        const int m = cross_count();
        if (m == 0 || m % 2 != 0) return false;
        for (std::size_t i = 0; i < k; ++i) {
            const EdgeLabel a = edges[i];
            const EdgeLabel b = edges[(i + 1) % k];
            if (a == EdgeLabel::cross && b == EdgeLabel::cross) return false;
            if (a != EdgeLabel::cross && b != EdgeLabel::cross && a != b) return false;
        }
        return true;
    }

    std::string to_string() const {
        std::string s;
        s.reserve(edges.size());
        for (EdgeLabel e : edges) s.push_back(static_cast<char>(e));
        return s;
    }

    bool operator<(const Picture& other) const { return edges < other.edges; }
    bool operator==(const Picture& other) const { return edges == other.edges; }
};

// All distinct pictures of length k, one representative per traversal
// direction (the lexicographically smaller of the pair is kept). Exponential
// in k; intended as an oracle, hence the k <= 16 cap.
inline std::vector<Picture> enumerate_pictures(int k) {
    if (k < 4 || k > 16) throw invalid_parameter("enumerate_pictures: k must be in [4, 16]");

    std::vector<Picture> result;
    std::vector<EdgeLabel> seq(static_cast<std::size_t>(k));
    constexpr EdgeLabel alphabet[3] = {EdgeLabel::backward, EdgeLabel::cross, EdgeLabel::forward};

    auto compatible = [](EdgeLabel a, EdgeLabel b) {
        if (a == EdgeLabel::cross && b == EdgeLabel::cross) return false;
        if (a != EdgeLabel::cross && b != EdgeLabel::cross && a != b) return false;
        return true;
    };

    auto emit = [&]() {
        Picture p{seq};
        if (!p.is_valid()) return;
        if (p.reversed() < p) return;  // the reversal is the representative
        result.push_back(std::move(p));
    };

    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == k) { emit(); return; }
        for (EdgeLabel e : alphabet) {
            if (depth > 0 && !compatible(seq[depth - 1], e)) continue;
            seq[depth] = e;
            self(self, depth + 1);
        }
    };
    recurse(recurse, 0);
    std::sort(result.begin(), result.end());
    return result;
}

// --- LDPC pictures ---

// Number of pictures of length k = 2m in a (d_v, d_c) LDPC graph:
// d_c^m * d_v^m / 2. The numerator can be odd (odd d_v*d_c, odd m); the
// exact halved value is kept as numerator/2 with an integrality flag.
struct LdpcPictureCount {
    std::uint64_t numerator;  // d_c^m * d_v^m
    bool integral;            // numerator is even

    std::uint64_t count() const {
        if (!integral) throw invalid_parameter("ldpc_picture_count: non-integral count");
        return numerator / 2;
    }
    double value() const { return static_cast<double>(numerator) / 2.0; }
};

inline LdpcPictureCount ldpc_picture_count(int m, std::uint32_t dv, std::uint32_t dc) {
    if (m < 2) throw invalid_parameter("ldpc_picture_count: m must be >= 2");
    if (dv == 0 || dc == 0) throw invalid_parameter("ldpc_picture_count: degrees must be >= 1");
    detail::uint128 numerator = 1;
    const detail::uint128 base = detail::uint128(dv) * dc;
    for (int i = 0; i < m; ++i) {
        numerator *= base;
        if (numerator > static_cast<detail::uint128>(UINT64_MAX))
            throw invalid_parameter("ldpc_picture_count: overflow (reduce m)");
    }
    const auto num64 = static_cast<std::uint64_t>(numerator);
    return LdpcPictureCount{num64, num64 % 2 == 0};
}

} // namespace cycledist
