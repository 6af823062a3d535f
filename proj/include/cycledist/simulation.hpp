#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cycledist/cycle_census.hpp"
#include "cycledist/errors.hpp"
#include "cycledist/estimator.hpp"
#include "cycledist/graph_io.hpp"
#include "cycledist/prng.hpp"

namespace cycledist {

inline constexpr const char* kVersion = "1.0.0";

enum class Family { turbo_random, turbo_srandom, ldpc };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::turbo_random: return "turbo-random";
        case Family::turbo_srandom: return "turbo-srandom";
        case Family::ldpc: return "ldpc";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    if (s == "turbo-random" || s == "turbo") return Family::turbo_random;
    if (s == "turbo-srandom") return Family::turbo_srandom;
    if (s == "ldpc") return Family::ldpc;
    throw invalid_parameter("unknown family '" + s + "'");
}

// Monte Carlo ensemble description. Graph i uses seed base_seed + i; the
// node sample of graph i is drawn without replacement from an independent
// stream seeded with splitmix64(base_seed + i).
struct ExperimentConfig {
    Family family = Family::turbo_random;
    std::uint32_t n = 2000;
    std::uint32_t s = 0;            // turbo-srandom only
    std::uint32_t dv = 0, dc = 0;   // ldpc only
    std::uint32_t graphs = 50;
    std::uint32_t nodes_per_graph = 40;
    int k_max = 14;
    std::uint64_t base_seed = 1;
    bool include_u = false;
    int max_restarts = 1000;

    void validate() const {
        if (n == 0) throw invalid_parameter("config: n must be >= 1");
        if (graphs == 0) throw invalid_parameter("config: graphs must be >= 1");
        if (nodes_per_graph == 0) throw invalid_parameter("config: nodes must be >= 1");
        if (k_max < 4 || k_max > 64) throw invalid_parameter("config: kmax must be in [4, 64]");
        if (family == Family::turbo_srandom && s == 0)
            throw invalid_parameter("config: turbo-srandom needs s >= 1");
        if (family != Family::turbo_srandom && s != 0)
            throw invalid_parameter("config: s applies to turbo-srandom only");
        if (family == Family::ldpc) {
            if (dv == 0 || dc == 0) throw invalid_parameter("config: ldpc needs dv and dc");
            if ((std::uint64_t(n) * dv) % dc != 0)
                throw invalid_parameter("config: dc must divide n*dv");
            if (include_u) throw invalid_parameter("config: include_u applies to turbo graphs only");
        } else if (dv != 0 || dc != 0) {
            throw invalid_parameter("config: dv/dc apply to ldpc only");
        }
        const std::uint64_t population =
            family == Family::ldpc ? std::uint64_t(n) + std::uint64_t(n) * dv / dc
                                   : 2 * std::uint64_t(n);
        if (nodes_per_graph > population)
            throw invalid_parameter("config: nodes exceeds node count of one graph");
    }

    std::uint64_t sample_size() const { return std::uint64_t(graphs) * nodes_per_graph; }

    // Rough DFS step count, used by the CLI to gate full-scale runs.
    double work_estimate() const {
        double per_node;
        if (family == Family::ldpc)
            per_node = dv * std::pow(std::sqrt(double(std::max(dv, 1u) - 1) *
                                               double(std::max(dc, 1u) - 1)),
                                     k_max);
        else
            per_node = 3.0 * std::exp2(k_max - 1);
        return per_node * static_cast<double>(sample_size());
    }
};

// Flat key=value text (family, n, s, dv, dc, graphs, nodes, kmax, seed,
// include_u); blank lines and #-comments are skipped.
inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_parameter("config line " + std::to_string(line_no) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "family") cfg.family = parse_family(value);
            else if (key == "n") cfg.n = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "s") cfg.s = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "dv") cfg.dv = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "dc") cfg.dc = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "graphs") cfg.graphs = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "nodes") cfg.nodes_per_graph = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "kmax") cfg.k_max = std::stoi(value);
            else if (key == "seed") cfg.base_seed = std::stoull(value);
            else if (key == "include_u")
                cfg.include_u = (value == "1" || value == "true" || value == "yes");
            else if (key == "max_restarts") cfg.max_restarts = std::stoi(value);
            else throw invalid_parameter("config: unknown key '" + key + "'");
        } catch (const invalid_parameter&) {
            throw;
        } catch (const std::exception&) {
            throw invalid_parameter("config: bad value for '" + key + "': " + value);
        }
    }
    cfg.validate();
    return cfg;
}

inline void write_config(const ExperimentConfig& cfg, std::ostream& out) {
    out << "family=" << to_string(cfg.family) << "\nn=" << cfg.n << "\n";
    if (cfg.family == Family::turbo_srandom) out << "s=" << cfg.s << "\n";
    if (cfg.family == Family::ldpc) out << "dv=" << cfg.dv << "\ndc=" << cfg.dc << "\n";
    out << "graphs=" << cfg.graphs << "\nnodes=" << cfg.nodes_per_graph << "\nkmax=" << cfg.k_max
        << "\nseed=" << cfg.base_seed << "\ninclude_u=" << (cfg.include_u ? 1 : 0) << "\n";
}

// Binomial standard error sqrt(p(1-p)/N).
inline double estimate_sigma(double p_hat, std::uint64_t n_samples) {
    if (p_hat < 0.0 || p_hat > 1.0) throw invalid_parameter("estimate_sigma: p must be in [0,1]");
    if (n_samples == 0) throw invalid_parameter("estimate_sigma: N must be >= 1");
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_samples));
}

// Aggregated ensemble outcome. Per cycle length k the tallies hold, over all
// sampled nodes: no_exact[k] nodes without a cycle of length exactly k,
// no_leq[k] nodes without any cycle of length <= k, and joint[k] nodes
// without cycles of either length k or k + pair_gap (pair_gap is 2 for the
// bipartite LDPC family, 1 otherwise).
struct SimulationReport {
    ExperimentConfig config;
    std::uint64_t sample_size = 0;
    int k_min = 4;   // first reported row
    int k_step = 1;
    int pair_gap = 1;
    std::vector<std::uint64_t> no_exact;  // index 0..k_max
    std::vector<std::uint64_t> no_leq;
    std::vector<std::uint64_t> joint;
    std::int64_t wall_ms = 0;

    double p_sim(int k) const { return ratio(no_leq, k); }
    double p_marginal(int k) const { return ratio(no_exact, k); }
    double p_joint(int k) const { return ratio(joint, k); }

    // Analytic column for row k; nan where the estimator's n >> k
    // precondition fails (it refuses to extrapolate to n <= k).
    double p_theory(int k) const {
        const std::uint64_t n = config.n;
        if (config.family == Family::ldpc) {
            const std::uint64_t w = std::uint64_t(config.n) * config.dv / config.dc;
            const std::uint64_t m = static_cast<std::uint64_t>(k) / 2;
            if (n <= m || w <= m) return std::nan("");
            return ldpc_prob_no_cycle_leq(n, config.dv, config.dc, k);
        }
        if (n <= static_cast<std::uint64_t>(k)) return std::nan("");
        return config.include_u ? prob_no_cycle_leq_with_u(n, k) : prob_no_cycle_leq(n, k);
    }

    int last_k() const { return k_min + ((config.k_max - k_min) / k_step) * k_step; }

private:
    double ratio(const std::vector<std::uint64_t>& v, int k) const {
        if (k < 1 || k >= static_cast<int>(v.size()))
            throw invalid_parameter("SimulationReport: k out of range");
        return static_cast<double>(v[static_cast<std::size_t>(k)]) /
               static_cast<double>(sample_size);
    }
};

namespace detail {

struct GraphTally {
    std::vector<std::uint32_t> no_exact, no_leq, joint;
};

inline void tally_node(const CycleCounts& counts, int k_max, int pair_gap, GraphTally& tally) {
    std::vector<char> free_at(static_cast<std::size_t>(k_max) + 1, 1);
    for (const auto& [len, cnt] : counts)
        if (cnt > 0) free_at[static_cast<std::size_t>(len)] = 0;
    bool all_free = true;
    for (int k = 1; k <= k_max; ++k) {
        tally.no_exact[k] += free_at[k];
        all_free = all_free && free_at[k];
        tally.no_leq[k] += all_free;
        if (k + pair_gap <= k_max) tally.joint[k] += (free_at[k] && free_at[k + pair_gap]);
    }
}

inline GraphTally run_one_graph(const ExperimentConfig& cfg, std::uint32_t index) {
    const std::uint64_t graph_seed = cfg.base_seed + index;
    const int pair_gap = cfg.family == Family::ldpc ? 2 : 1;

    GraphTally tally;
    tally.no_exact.assign(static_cast<std::size_t>(cfg.k_max) + 1, 0);
    tally.no_leq.assign(static_cast<std::size_t>(cfg.k_max) + 1, 0);
    tally.joint.assign(static_cast<std::size_t>(cfg.k_max) + 1, 0);

    rng_engine node_rng(splitmix64(graph_seed));
    auto run_census = [&](const auto& graph) {
        const auto sample =
            sample_without_replacement(graph.num_nodes(), cfg.nodes_per_graph, node_rng);
        CensusOptions opts;
        opts.with_u_nodes = cfg.include_u;
        const CycleCensus result = census(graph, sample, cfg.k_max, opts);
        for (const auto& [node, counts] : result.per_node)
            tally_node(counts, cfg.k_max, pair_gap, tally);
    };

    switch (cfg.family) {
        case Family::turbo_random: run_census(gen_random_turbo_graph(cfg.n, graph_seed)); break;
        case Family::turbo_srandom:
            run_census(gen_s_random_turbo_graph(cfg.n, cfg.s, graph_seed, cfg.max_restarts));
            break;
        case Family::ldpc:
            run_census(build_ldpc_graph(cfg.n, cfg.dv, cfg.dc, graph_seed, cfg.max_restarts));
            break;
    }
    return tally;
}

} // namespace detail

// Runs the full ensemble. Graph-level work items are distributed over
// `threads` workers; the merge is keyed by graph index, so the result is
// identical for every thread count.
inline SimulationReport run_simulation(const ExperimentConfig& cfg, int threads = 1) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<detail::GraphTally> tallies(cfg.graphs);
    std::exception_ptr failure;
    std::atomic<std::uint32_t> next{0};
    std::atomic<bool> abort{false};

    auto worker = [&]() {
        for (;;) {
            const std::uint32_t i = next.fetch_add(1);
            if (i >= cfg.graphs || abort.load()) return;
            try {
                tallies[i] = detail::run_one_graph(cfg, i);
            } catch (...) {
                abort.store(true);
                failure = std::current_exception();
                return;
            }
        }
    };

    const int spawn = std::max(1, std::min<int>(threads, static_cast<int>(cfg.graphs)));
    if (spawn == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(spawn));
        for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    SimulationReport report;
    report.config = cfg;
    report.sample_size = cfg.sample_size();
    report.k_min = cfg.include_u ? 6 : 4;
    report.k_step = cfg.family == Family::ldpc ? 2 : 1;
    report.pair_gap = cfg.family == Family::ldpc ? 2 : 1;
    report.no_exact.assign(static_cast<std::size_t>(cfg.k_max) + 1, 0);
    report.no_leq.assign(static_cast<std::size_t>(cfg.k_max) + 1, 0);
    report.joint.assign(static_cast<std::size_t>(cfg.k_max) + 1, 0);
    for (const auto& tally : tallies)
        for (int k = 1; k <= cfg.k_max; ++k) {
            report.no_exact[k] += tally.no_exact[k];
            report.no_leq[k] += tally.no_leq[k];
            report.joint[k] += tally.joint[k];
        }
    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return report;
}

struct CompareRow {
    int k;
    double p_sim, p_theory, diff, sigma;
};

inline std::vector<CompareRow> compare_report(const SimulationReport& report,
                                              const TheoryCurve& theory) {
    if (theory.k_min != report.k_min || theory.k_step != report.k_step ||
        theory.k_max() != report.last_k())
        throw invalid_parameter("compare_report: k ranges of simulation and theory differ");
    std::vector<CompareRow> rows;
    for (int k = report.k_min; k <= report.config.k_max; k += report.k_step) {
        CompareRow row;
        row.k = k;
        row.p_sim = report.p_sim(k);
        row.p_theory = theory.at(k);
        row.diff = row.p_sim - row.p_theory;
        row.sigma = estimate_sigma(row.p_sim, report.sample_size);
        rows.push_back(row);
    }
    return rows;
}

struct IndependenceRow {
    int k;  // exact length k (turbo); lengths 2k vs 2k+2 (ldpc)
    double product, joint, diff;
};

// Tests the factorization P(no k-cycle, no (k+gap)-cycle) ~ product of the
// marginals, one row per adjacent length pair.
inline std::vector<IndependenceRow> independence_report(const SimulationReport& report) {
    std::vector<IndependenceRow> rows;
    const int gap = report.pair_gap;
    for (int k = gap; k + gap <= report.config.k_max; k += gap) {
        IndependenceRow row;
        row.k = gap == 2 ? k / 2 : k;  // ldpc row r stands for lengths 2r vs 2r+2
        row.product = report.p_marginal(k) * report.p_marginal(k + gap);
        row.joint = report.p_joint(k);
        row.diff = row.product - row.joint;
        rows.push_back(row);
    }
    return rows;
}

namespace detail {

inline std::string format_prob(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace detail

// CSV body `k,p_sim,sigma,p_theory,diff,sigma_theory` preceded by #-metadata.
// sigma is the binomial standard error of p_sim; sigma_theory is the same
// formula evaluated at p_theory (the convention the paper's table matches).
// The `# wall_ms` line is the only part that varies between identical runs.
inline void write_report_csv(const SimulationReport& report, std::ostream& out) {
    const auto& cfg = report.config;
    out << "# cycledist simulation report (version " << kVersion << ")\n";
    out << "# family: " << to_string(cfg.family) << "\n";
    out << "# n: " << cfg.n << "\n";
    if (cfg.family == Family::turbo_srandom) out << "# s: " << cfg.s << "\n";
    if (cfg.family == Family::ldpc) out << "# dv: " << cfg.dv << "\n# dc: " << cfg.dc << "\n";
    out << "# graphs: " << cfg.graphs << "\n";
    out << "# nodes_per_graph: " << cfg.nodes_per_graph << "\n";
    out << "# k_max: " << cfg.k_max << "\n";
    out << "# include_u: " << (cfg.include_u ? 1 : 0) << "\n";
    out << "# base_seed: " << cfg.base_seed << "\n";
    out << "# graph_seeds: base_seed+0 .. base_seed+" << (cfg.graphs - 1) << "\n";
    out << "# node_sample_seeds: splitmix64(graph_seed), drawn without replacement\n";
    out << "# sample_size: " << report.sample_size << "\n";
    out << "# wall_ms: " << report.wall_ms << "\n";
    out << "k,p_sim,sigma,p_theory,diff,sigma_theory\n";
    for (int k = report.k_min; k <= cfg.k_max; k += report.k_step) {
        const double p = report.p_sim(k);
        const double pt = report.p_theory(k);
        out << k << ',' << detail::format_prob(p) << ','
            << detail::format_prob(estimate_sigma(p, report.sample_size)) << ','
            << detail::format_prob(pt) << ',' << detail::format_prob(p - pt) << ','
            << detail::format_prob(std::isnan(pt) ? pt : estimate_sigma(pt, report.sample_size))
            << "\n";
    }
}

// CSV: k,product,joint,diff
inline void write_independence_csv(const SimulationReport& report, std::ostream& out) {
    out << "k,product,joint,diff\n";
    for (const IndependenceRow& row : independence_report(report))
        out << row.k << ',' << detail::format_prob(row.product) << ','
            << detail::format_prob(row.joint) << ',' << detail::format_prob(row.diff) << "\n";
}

// CSV: k,p_sim,p_theory,diff,sigma
inline void write_compare_csv(const std::vector<CompareRow>& rows, std::ostream& out) {
    out << "k,p_sim,p_theory,diff,sigma\n";
    for (const CompareRow& row : rows)
        out << row.k << ',' << detail::format_prob(row.p_sim) << ','
            << detail::format_prob(row.p_theory) << ',' << detail::format_prob(row.diff) << ','
            << detail::format_prob(row.sigma) << "\n";
}

// Minimal reader for a report CSV produced above: the k/p_sim columns plus
// the sample size from the metadata. Used by the compare subcommand.
struct SimCurve {
    std::uint64_t sample_size = 0;
    int k_min = 0, k_step = 0;
    std::vector<double> p_sim;
};

inline SimCurve read_report_csv(std::istream& in) {
    SimCurve curve;
    std::string line;
    std::vector<std::pair<int, double>> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string key = "# sample_size: ";
            if (line.rfind(key, 0) == 0) curve.sample_size = std::stoull(line.substr(key.size()));
            continue;
        }
        if (!header_seen) {  // column header
            if (line.rfind("k,", 0) != 0)
                throw invalid_parameter("report csv: missing column header");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        const int k = std::stoi(field);
        std::getline(row, field, ',');
        rows.emplace_back(k, std::stod(field));
    }
    if (rows.empty()) throw invalid_parameter("report csv: no data rows");
    if (curve.sample_size == 0) throw invalid_parameter("report csv: missing sample_size metadata");
    curve.k_min = rows.front().first;
    curve.k_step = rows.size() > 1 ? rows[1].first - rows[0].first : 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != curve.k_min + static_cast<int>(i) * curve.k_step)
            throw invalid_parameter("report csv: non-uniform k column");
        curve.p_sim.push_back(rows[i].second);
    }
    return curve;
}

inline TheoryCurve read_theory_csv(std::istream& in) {
    TheoryCurve curve;
    std::string line;
    if (!std::getline(in, line) || line.rfind("k,", 0) != 0)
        throw invalid_parameter("theory csv: missing column header");
    std::vector<std::pair<int, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        const int k = std::stoi(field);
        std::getline(row, field, ',');
        rows.emplace_back(k, std::stod(field));
        std::getline(row, field, ',');
        curve.variant = field == "turbo" ? CurveVariant::turbo
                        : field == "turbo-with-u" ? CurveVariant::turbo_with_u
                        : field == "turbo-closed-form" ? CurveVariant::turbo_closed_form
                        : field == "ldpc" ? CurveVariant::ldpc
                                          : throw invalid_parameter("theory csv: bad variant");
        std::getline(row, field, ',');
        curve.n = std::stoull(field);
    }
    if (rows.empty()) throw invalid_parameter("theory csv: no data rows");
    curve.k_min = rows.front().first;
    curve.k_step = rows.size() > 1 ? rows[1].first - rows[0].first : 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != curve.k_min + static_cast<int>(i) * curve.k_step)
            throw invalid_parameter("theory csv: non-uniform k column");
        curve.values.push_back(rows[i].second);
    }
    return curve;
}

// compare straight from serialized artifacts (the CLI path)
inline std::vector<CompareRow> compare_curves(const SimCurve& sim, const TheoryCurve& theory) {
    if (sim.k_min != theory.k_min || sim.k_step != theory.k_step ||
        sim.p_sim.size() != theory.values.size())
        throw invalid_parameter("compare: k ranges of simulation and theory differ");
    std::vector<CompareRow> rows;
    for (std::size_t i = 0; i < sim.p_sim.size(); ++i) {
        CompareRow row;
        row.k = sim.k_min + static_cast<int>(i) * sim.k_step;
        row.p_sim = sim.p_sim[i];
        row.p_theory = theory.values[i];
        row.diff = row.p_sim - row.p_theory;
        row.sigma = estimate_sigma(row.p_sim, sim.sample_size);
        rows.push_back(row);
    }
    return rows;
}

} // namespace cycledist
