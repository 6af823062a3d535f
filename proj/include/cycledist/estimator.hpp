#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "cycledist/errors.hpp"
#include "cycledist/pictures.hpp"

namespace cycledist {

// Analytic estimates for the probability that a randomly chosen node lies on
// no simple cycle of length <= k. The chain of estimates:
//
//   1. bounds on the probability of embedding one picture of length k with m
//      cross edges at a node of a turbo graph with chain length n
//      (embed_prob_bounds); the bound mean serves as the point estimate,
//   2. per-length no-cycle probability as a product of per-picture failure
//      probabilities, assumed independent (prob_no_cycle_exact_len),
//   3. the cumulative curve as a product over lengths 4..k
//      (prob_no_cycle_leq),
//
// plus a large-n closed form exp(-(2^(k-1)-4)/n), the variant counting
// information-bit nodes on cross edges, and the LDPC analogues.
//
// Long products of near-1 factors are evaluated as summed log1p terms.

// Bounds on the probability of embedding a picture of length k with m cross
// edges. Both bound products run s = 0..m/2 inclusive with the cycle-closure
// factor 1/(n - m/2) outside; a factor that would go negative (possible only
// for small n) clamps that bound to 0.
struct EmbedBounds {
    double lower = 0;
    double upper = 0;
    double mean = 0;
};

inline EmbedBounds embed_prob_bounds(std::uint64_t n, int k, int m) {
    if (m <= 0 || m % 2 != 0 || 2 * m > k)
        throw invalid_parameter("embed_prob_bounds: need m even, 0 < m, 2m <= k");
    if (n <= static_cast<std::uint64_t>(k))
        throw invalid_parameter("embed_prob_bounds: need n > k");

    const double nd = static_cast<double>(n);
    double lower = 1.0, upper = 1.0;
    for (int s = 0; s <= m / 2; ++s) {
        const double l1 = 1.0 - (s + k - 2.0 * m) / (nd - s);
        const double l2 = 1.0 - (s + 1.0) / (nd - (2.0 * s + k - 2.0 * m));
        const double u1 = 1.0 - static_cast<double>(s) / (nd - s);
        const double u2 = 1.0 - 1.0 / (nd - 2.0 * s);
        if (l1 <= 0 || l2 <= 0) lower = 0.0; else lower *= (l1 * l2) * (l1 * l2);
        if (u1 <= 0 || u2 <= 0) upper = 0.0; else upper *= (u1 * u2) * (u1 * u2);
    }
    const double closure = 1.0 / (nd - m / 2.0);
    EmbedBounds b;
    b.lower = lower * closure;
    b.upper = upper * closure;
    b.mean = 0.5 * (b.lower + b.upper);
    return b;
}

namespace detail {

// log P(no cycle of length exactly k), Eq. over pictures:
//   sum over even m of N(k,m) * log(1 - P_mean(k,m))
inline double log_prob_no_cycle_exact_len(std::uint64_t n, int k) {
    double log_p = 0.0;
    for (int m = 2; 2 * m <= k; m += 2) {
        const EmbedBounds b = embed_prob_bounds(n, k, m);
        log_p += static_cast<double>(picture_count(k, m)) * std::log1p(-b.mean);
    }
    return log_p;
}

} // namespace detail

// P(no cycle of length exactly k at a random node), independence product over
// all pictures of length k.
inline double prob_no_cycle_exact_len(std::uint64_t n, int k) {
    if (k < 4) throw invalid_parameter("prob_no_cycle_exact_len: k must be >= 4");
    if (k > kMaxPictureLength) throw invalid_parameter("prob_no_cycle_exact_len: k must be <= 64");
    if (n <= static_cast<std::uint64_t>(k))
        throw invalid_parameter("prob_no_cycle_exact_len: need n > k");
    return std::exp(detail::log_prob_no_cycle_exact_len(n, k));
}

// P(no cycle of length <= k), product over lengths 4..k.
inline double prob_no_cycle_leq(std::uint64_t n, int k) {
    if (k < 4) throw invalid_parameter("prob_no_cycle_leq: k must be >= 4");
    if (k > kMaxPictureLength) throw invalid_parameter("prob_no_cycle_leq: k must be <= 64");
    if (n <= static_cast<std::uint64_t>(k))
        throw invalid_parameter("prob_no_cycle_leq: need n > k");
    double log_p = 0.0;
    for (int i = 4; i <= k; ++i) log_p += detail::log_prob_no_cycle_exact_len(n, i);
    return std::exp(log_p);
}

// Large-n closed form exp(-(2^(k-1)-4)/n).
inline double prob_no_cycle_leq_closed(std::uint64_t n, int k) {
    if (k < 4) throw invalid_parameter("prob_no_cycle_leq_closed: k must be >= 4");
    if (n == 0) throw invalid_parameter("prob_no_cycle_leq_closed: n must be >= 1");
    return std::exp(-(std::exp2(k - 1) - 4.0) / static_cast<double>(n));
}

// Cycle length at which the closed form crosses 0.5:
//   k_0.5 = log2(n ln 2 + 4) + 1.
inline double k_half(std::uint64_t n) {
    if (n == 0) throw invalid_parameter("k_half: n must be >= 1");
    return std::log2(static_cast<double>(n) * std::log(2.0) + 4.0) + 1.0;
}

// Curve variant counting the information-bit node on every cross edge: a
// cycle of plain length k' with m' cross edges appears with length k'+m'.
// In the transformed sum m runs over multiples of 4 up to 2k/3, and the
// plain-graph parameters are (k - m/2, m/2). Minimum length is 6.
inline double prob_no_cycle_leq_with_u(std::uint64_t n, int k) {
    if (k < 0) throw invalid_parameter("prob_no_cycle_leq_with_u: k must be nonnegative");
    if (k > kMaxPictureLength) throw invalid_parameter("prob_no_cycle_leq_with_u: k must be <= 64");
    if (n <= static_cast<std::uint64_t>(k))
        throw invalid_parameter("prob_no_cycle_leq_with_u: need n > k");
    double log_p = 0.0;
    for (int len = 6; len <= k; ++len) {
        for (int m = 4; 3 * m <= 2 * len; m += 4) {
            const int plain_k = len - m / 2;
            const int plain_m = m / 2;
            const EmbedBounds b = embed_prob_bounds(n, plain_k, plain_m);
            log_p += static_cast<double>(picture_count(plain_k, plain_m)) * std::log1p(-b.mean);
        }
    }
    return std::exp(log_p);
}

// Probability of embedding an LDPC picture of length 2m at a random node:
//   1/(n-1) * (1-1/d_c)^m * (1-1/d_v)^(m-1)
//     * prod_{i=0}^{m-2} (1-i/(n-1)) (1-i/(w-1))
inline double ldpc_embed_prob(std::uint64_t n, std::uint64_t w, std::uint32_t dv, std::uint32_t dc,
                              int m) {
    if (m < 2) throw invalid_parameter("ldpc_embed_prob: m must be >= 2");
    if (dv == 0 || dc == 0) throw invalid_parameter("ldpc_embed_prob: degrees must be >= 1");
    if (n <= static_cast<std::uint64_t>(m) || w <= static_cast<std::uint64_t>(m))
        throw invalid_parameter("ldpc_embed_prob: need n > m and w > m");
    const double nd = static_cast<double>(n), wd = static_cast<double>(w);
    double p = 1.0 / (nd - 1.0);
    p *= std::pow(1.0 - 1.0 / dc, m);
    p *= std::pow(1.0 - 1.0 / dv, m - 1);
    for (int i = 0; i <= m - 2; ++i) p *= (1.0 - i / (nd - 1.0)) * (1.0 - i / (wd - 1.0));
    return p;
}

// P(no cycle of length <= k) in a regular LDPC graph, product over even
// lengths 4..k (odd-length cycles cannot occur in a bipartite graph).
inline double ldpc_prob_no_cycle_leq(std::uint64_t n, std::uint32_t dv, std::uint32_t dc, int k) {
    if (k < 4 || k % 2 != 0)
        throw invalid_parameter("ldpc_prob_no_cycle_leq: k must be even and >= 4");
    if (dv == 0 || dc == 0) throw invalid_parameter("ldpc_prob_no_cycle_leq: degrees must be >= 1");
    if ((n * dv) % dc != 0) throw invalid_parameter("ldpc_prob_no_cycle_leq: d_c must divide n*d_v");
    const std::uint64_t w = n * dv / dc;
    double log_p = 0.0;
    for (int i = 4; i <= k; i += 2) {
        const int m = i / 2;
        const double exponent = ldpc_picture_count(m, dv, dc).value();
        log_p += exponent * std::log1p(-ldpc_embed_prob(n, w, dv, dc, m));
    }
    return std::exp(log_p);
}

// --- theory curves ---

enum class CurveVariant { turbo, turbo_with_u, turbo_closed_form, ldpc };

inline const char* to_string(CurveVariant v) {
    switch (v) {
        case CurveVariant::turbo: return "turbo";
        case CurveVariant::turbo_with_u: return "turbo-with-u";
        case CurveVariant::turbo_closed_form: return "turbo-closed-form";
        case CurveVariant::ldpc: return "ldpc";
    }
    return "?";
}

struct TheoryCurve {
    CurveVariant variant = CurveVariant::turbo;
    std::uint64_t n = 0;
    std::uint32_t dv = 0, dc = 0;  // ldpc only
    int k_min = 4;
    int k_step = 1;
    std::vector<double> values;  // values[i] = P(no cycle <= k_min + i*k_step)

    int k_max() const { return k_min + k_step * (static_cast<int>(values.size()) - 1); }
    double at(int k) const {
        const int idx = (k - k_min) / k_step;
        if (k < k_min || (k - k_min) % k_step != 0 || idx >= static_cast<int>(values.size()))
            throw invalid_parameter("TheoryCurve: k=" + std::to_string(k) + " not on curve");
        return values[static_cast<std::size_t>(idx)];
    }
};

inline TheoryCurve make_theory_curve(CurveVariant variant, std::uint64_t n, int k_max,
                                     std::uint32_t dv = 0, std::uint32_t dc = 0) {
    TheoryCurve curve;
    curve.variant = variant;
    curve.n = n;
    curve.dv = dv;
    curve.dc = dc;
    switch (variant) {
        case CurveVariant::turbo:
            curve.k_min = 4;
            for (int k = 4; k <= k_max; ++k) curve.values.push_back(prob_no_cycle_leq(n, k));
            break;
        case CurveVariant::turbo_closed_form:
            curve.k_min = 4;
            for (int k = 4; k <= k_max; ++k) curve.values.push_back(prob_no_cycle_leq_closed(n, k));
            break;
        case CurveVariant::turbo_with_u:
            curve.k_min = 6;
            for (int k = 6; k <= k_max; ++k) curve.values.push_back(prob_no_cycle_leq_with_u(n, k));
            break;
        case CurveVariant::ldpc:
            curve.k_min = 4;
            curve.k_step = 2;
            for (int k = 4; k <= k_max; k += 2)
                curve.values.push_back(ldpc_prob_no_cycle_leq(n, dv, dc, k));
            break;
    }
    if (curve.values.empty())
        throw invalid_parameter("make_theory_curve: k_max below the curve's first length");
    return curve;
}

// CSV: k,p_no_cycle_leq_k,variant,n[,dv,dc]
inline void write_theory_csv(const TheoryCurve& curve, std::ostream& out) {
    const bool ldpc = curve.variant == CurveVariant::ldpc;
    out << "k,p_no_cycle_leq_k,variant,n" << (ldpc ? ",dv,dc" : "") << "\n";
    char buf[32];
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        const int k = curve.k_min + curve.k_step * static_cast<int>(i);
        std::snprintf(buf, sizeof buf, "%.6f", curve.values[i]);
        out << k << ',' << buf << ',' << to_string(curve.variant) << ',' << curve.n;
        if (ldpc) out << ',' << curve.dv << ',' << curve.dc;
        out << "\n";
    }
}

} // namespace cycledist
