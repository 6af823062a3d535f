#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cycledist/estimator.hpp"
#include "cycledist/simulation.hpp"

using namespace cycledist;

TEST_CASE("embedding bound ratios at paper scale") {
    // n=64000: upper/lower is 1.0005 at (k=20, m=10) and 1.0003 at (k=10, m=4)
    const auto a = embed_prob_bounds(64000, 20, 10);
    CHECK(a.upper / a.lower == Catch::Approx(1.0005).margin(5e-5));
    const auto b = embed_prob_bounds(64000, 10, 4);
    CHECK(b.upper / b.lower == Catch::Approx(1.0003).margin(5e-5));
}

TEST_CASE("bounds sandwich and closeness") {
    for (std::uint64_t n : {1000ull, 8000ull, 10000ull, 64000ull})
        for (int k = 4; k <= 20; ++k)
            for (int m = 2; 2 * m <= k; m += 2) {
                CAPTURE(n, k, m);
                const auto b = embed_prob_bounds(n, k, m);
                CHECK(b.lower >= 0.0);
                CHECK(b.lower <= b.mean);
                CHECK(b.mean <= b.upper);
                CHECK(b.upper <= 1.0);
                // worst case over this grid is (k=20, m=4) with ratio
                // ~ 1.031 at n=1000 and ~ 1.0098 at n=8000: the 1% closeness
                // claim holds from n ~ 8000 up
                if (n >= 8000) CHECK(b.upper / b.lower <= 1.01);
            }
    CHECK_THROWS_AS(embed_prob_bounds(64000, 10, 3), invalid_parameter);
    CHECK_THROWS_AS(embed_prob_bounds(64000, 10, 6), invalid_parameter);
    CHECK_THROWS_AS(embed_prob_bounds(10, 10, 4), invalid_parameter);  // needs n > k
}

TEST_CASE("embedding probability approaches 1/n") {
    const auto b = embed_prob_bounds(1000000000ull, 10, 4);
    CHECK(1e9 * b.mean == Catch::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("per-length no-cycle probability") {
    CHECK(prob_no_cycle_exact_len(64000, 4) == Catch::Approx(0.999938).margin(1e-4));
    // factors approach 1 as n grows
    CHECK(prob_no_cycle_exact_len(1ull << 40, 8) == Catch::Approx(1.0).margin(1e-6));
    CHECK_THROWS_AS(prob_no_cycle_exact_len(8, 8), invalid_parameter);
}

TEST_CASE("log-space product agrees with the naive product") {
    // n=1000, k=8: few factors, naive evaluation is exactly representable
    const std::uint64_t n = 1000;
    const int k = 8;
    double naive = 1.0;
    for (int m = 2; 2 * m <= k; m += 2)
        naive *= std::pow(1.0 - embed_prob_bounds(n, k, m).mean,
                          static_cast<double>(picture_count(k, m)));
    CHECK(prob_no_cycle_exact_len(n, k) == Catch::Approx(naive).epsilon(1e-12));
}

TEST_CASE("cumulative curve reproduces the paper's table") {
    CHECK(prob_no_cycle_leq(64000, 4) == Catch::Approx(0.999938).margin(1e-4));
    CHECK(prob_no_cycle_leq(64000, 12) == Catch::Approx(0.968456).margin(1e-4));
    CHECK(prob_no_cycle_leq(64000, 20) == Catch::Approx(0.000279).margin(5e-5));
    CHECK_THROWS_AS(prob_no_cycle_leq(64000, 3), invalid_parameter);
    CHECK_THROWS_AS(prob_no_cycle_leq(12, 14), invalid_parameter);
}

TEST_CASE("closed form") {
    CHECK(prob_no_cycle_leq_closed(64000, 4) == Catch::Approx(std::exp(-4.0 / 64000)).epsilon(1e-12));
    CHECK(prob_no_cycle_leq_closed(64000, 18) == Catch::Approx(0.1290).margin(1e-4));
    CHECK(prob_no_cycle_leq(64000, 18) == Catch::Approx(0.129488).margin(1e-4));
    // strictly decreasing until the value underflows to zero (k ~ 27)
    for (int k = 4; k < 25; ++k)
        CHECK(prob_no_cycle_leq_closed(64000, k + 1) < prob_no_cycle_leq_closed(64000, k));
}

TEST_CASE("k_half") {
    CHECK(k_half(64000) == Catch::Approx(16.44).margin(0.01));

    // squaring the block length roughly doubles k_half (the residual tends
    // to -log2(ln 2) ~ 0.53)
    for (std::uint64_t n : {10000ull, 100000ull, 1000000ull}) {
        CAPTURE(n);
        CHECK(std::abs(k_half(n * n) - (2 * k_half(n) - 1)) < 0.6);
    }

    // rounding k_half to an integer keeps the closed form near 0.5
    for (std::uint64_t n = 1000; n <= 1000000; n *= 10) {
        const int k = static_cast<int>(std::lround(k_half(n)));
        const double p = prob_no_cycle_leq_closed(n, k);
        CAPTURE(n, k);
        CHECK(p > 0.3);
        CHECK(p < 0.7);
    }
}

TEST_CASE("U-node curve") {
    // below the minimal U-inclusive length the probability is exactly 1
    CHECK(prob_no_cycle_leq_with_u(64000, 5) == 1.0);
    CHECK(prob_no_cycle_leq_with_u(64000, 4) == 1.0);

    // counting the information-bit nodes lengthens cycles: curve shifts right
    for (int k = 6; k <= 20; ++k) {
        CAPTURE(k);
        CHECK(prob_no_cycle_leq_with_u(64000, k) >= prob_no_cycle_leq(64000, k));
    }

    // k=6 has the single transformed term (plain k'=4, m'=2)
    const double expected =
        std::pow(1.0 - embed_prob_bounds(64000, 4, 2).mean, 4.0);
    CHECK(prob_no_cycle_leq_with_u(64000, 6) == Catch::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(prob_no_cycle_leq_with_u(10, 12), invalid_parameter);
}

TEST_CASE("ldpc embedding probability") {
    // m=2: the i-product is empty of nontrivial factors
    const double p = ldpc_embed_prob(63000, 37800, 3, 5, 2);
    const double expected = (1.0 / 62999.0) * (4.0 / 5) * (4.0 / 5) * (2.0 / 3);
    CHECK(p == Catch::Approx(expected).epsilon(1e-14));

    // n -> infinity with w = n dv/dc: n * P -> (1-1/dc)^m (1-1/dv)^(m-1)
    const std::uint64_t big = 100000000ull;
    for (int m : {2, 3, 5}) {
        const double limit = std::pow(0.8, m) * std::pow(2.0 / 3, m - 1);
        CAPTURE(m);
        CHECK(static_cast<double>(big) * ldpc_embed_prob(big, big * 3 / 5, 3, 5, m) ==
              Catch::Approx(limit).epsilon(1e-5));
    }

    // always within (0, 1/(n-1)]
    for (int m = 2; m <= 10; ++m) {
        const double v = ldpc_embed_prob(15000, 9000, 3, 5, m);
        CHECK(v > 0.0);
        CHECK(v <= 1.0 / 14999.0);
    }

    CHECK_THROWS_AS(ldpc_embed_prob(63000, 37800, 3, 5, 1), invalid_parameter);
    CHECK_THROWS_AS(ldpc_embed_prob(4, 9000, 3, 5, 4), invalid_parameter);
}

TEST_CASE("ldpc no-cycle curve") {
    // monotone non-increasing over even k
    double prev = 1.0;
    for (int k = 4; k <= 16; k += 2) {
        const double v = ldpc_prob_no_cycle_leq(15000, 3, 5, k);
        CHECK(v <= prev);
        prev = v;
    }

    // shorter cycles are more likely than in the n=64000 turbo graph
    for (int k : {4, 6, 8, 10}) {
        CAPTURE(k);
        CHECK(ldpc_prob_no_cycle_leq(15000, 3, 5, k) < prob_no_cycle_leq(64000, k));
    }

    CHECK_THROWS_AS(ldpc_prob_no_cycle_leq(15000, 3, 5, 7), invalid_parameter);
    CHECK_THROWS_AS(ldpc_prob_no_cycle_leq(15001, 3, 5, 8), invalid_parameter);
}

TEST_CASE("ldpc curve vs Monte Carlo at reduced scale") {
    // Eq.-19 value at k=4 against a simulated fraction (3 graphs x 400 nodes)
    ExperimentConfig cfg;
    cfg.family = Family::ldpc;
    cfg.n = 63000;
    cfg.dv = 3;
    cfg.dc = 5;
    cfg.graphs = 3;
    cfg.nodes_per_graph = 400;
    cfg.k_max = 4;
    cfg.base_seed = 2024;
    const SimulationReport report = run_simulation(cfg, 2);
    const double p_hat = report.p_sim(4);
    const double theory = ldpc_prob_no_cycle_leq(63000, 3, 5, 4);
    // sigma of p_hat degenerates when the sample sees no short cycle at all,
    // so the binomial error is also taken at the theory value
    const double sigma = std::max(estimate_sigma(p_hat, report.sample_size),
                                  estimate_sigma(theory, report.sample_size));
    CHECK(std::abs(p_hat - theory) <= 3 * sigma);
}

TEST_CASE("theory curves are monotone and serializable") {
    for (auto variant : {CurveVariant::turbo, CurveVariant::turbo_with_u,
                         CurveVariant::turbo_closed_form}) {
        const TheoryCurve curve = make_theory_curve(variant, 20000, 18);
        for (std::size_t i = 1; i < curve.values.size(); ++i)
            CHECK(curve.values[i] <= curve.values[i - 1]);
        for (double v : curve.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    const TheoryCurve ldpc = make_theory_curve(CurveVariant::ldpc, 15000, 12, 3, 5);
    CHECK(ldpc.k_step == 2);
    for (std::size_t i = 1; i < ldpc.values.size(); ++i)
        CHECK(ldpc.values[i] <= ldpc.values[i - 1]);

    std::ostringstream out;
    write_theory_csv(ldpc, out);
    CHECK(out.str().rfind("k,p_no_cycle_leq_k,variant,n,dv,dc\n4,", 0) == 0);
}

TEST_CASE("estimators refuse to extrapolate below n > k") {
    // the independence products are large-n approximations; at n <= k the
    // operations reject instead of returning a number
    CHECK_THROWS_AS(prob_no_cycle_leq(10, 10), invalid_parameter);
    CHECK_THROWS_AS(prob_no_cycle_leq(10, 14), invalid_parameter);
    CHECK_THROWS_AS(prob_no_cycle_leq_with_u(10, 12), invalid_parameter);
    CHECK_NOTHROW(prob_no_cycle_leq(11, 10));
}
