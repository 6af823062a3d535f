// Command-line front end: graph generation, cycle censuses, analytic curves,
// Monte Carlo ensembles and the derived comparison/independence tables.
//
// Exit codes: 0 success, 1 invalid input, 2 construction failure.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cycledist/cycle_census.hpp"
#include "cycledist/estimator.hpp"
#include "cycledist/graph_io.hpp"
#include "cycledist/simulation.hpp"

namespace {

using namespace cycledist;

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw invalid_parameter("cannot open output file: " + path);
    write(out);
    out.flush();
    if (!out) throw invalid_parameter("write failed: " + path);
}

AnyGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("cannot open graph file: " + path);
    return load_graph(in);
}

ExperimentConfig load_config_file(const std::string& path) {
    if (path.empty()) return ExperimentConfig{};  // desk-scale defaults
    std::ifstream in(path);
    if (!in) throw invalid_parameter("cannot open config file: " + path);
    return parse_config(in);
}

// Ensembles past this step budget are refused without --full-scale; the
// paper-scale turbo run (n=64000, 200x100, k_max=20) is an hours-long job.
constexpr double kFullScaleWorkThreshold = 6.0e9;

struct SimulateArgs {
    std::string config_path, out_path, independence_path;
    int threads = 1;
    bool full_scale = false;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
};

SimulationReport run_from_args(const SimulateArgs& args) {
    ExperimentConfig cfg = load_config_file(args.config_path);
    if (args.seed_set) cfg.base_seed = args.seed_override;
    cfg.validate();
    if (cfg.work_estimate() > kFullScaleWorkThreshold) {
        if (!args.full_scale)
            throw invalid_parameter(
                "this configuration is a batch-scale job (hours); rerun with --full-scale");
        std::cerr << "warning: full-scale run, expect hours of compute\n";
    }
    return run_simulation(cfg, args.threads);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycle-length distributions in turbo / LDPC decoding graphs"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "emit a graph file");
    std::string gen_family = "turbo", gen_out;
    std::uint32_t gen_n = 0, gen_s = 0, gen_dv = 0, gen_dc = 0;
    std::uint64_t gen_seed = 1;
    int gen_restarts = 1000;
    generate->add_option("--family", gen_family, "turbo | turbo-srandom | ldpc");
    generate->add_option("--n", gen_n, "chain length / variable-node count")->required();
    generate->add_option("--seed", gen_seed, "64-bit seed (default 1)");
    generate->add_option("--s", gen_s, "spread S (turbo-srandom)");
    generate->add_option("--dv", gen_dv, "variable degree (ldpc)");
    generate->add_option("--dc", gen_dc, "check degree (ldpc)");
    generate->add_option("--max-restarts", gen_restarts, "construction restart budget");
    generate->add_option("--out", gen_out, "output file (default stdout)");
    generate->callback([&] {
        const Family family = parse_family(gen_family);
        if (family == Family::turbo_random) {
            const TurboGraph g = gen_random_turbo_graph(gen_n, gen_seed);
            with_output(gen_out, [&](std::ostream& out) { save_graph(g, out); });
        } else if (family == Family::turbo_srandom) {
            if (gen_s == 0) throw invalid_parameter("generate: turbo-srandom needs --s >= 1");
            const TurboGraph g = gen_s_random_turbo_graph(gen_n, gen_s, gen_seed, gen_restarts);
            with_output(gen_out, [&](std::ostream& out) { save_graph(g, out); });
        } else {
            if (gen_dv == 0 || gen_dc == 0)
                throw invalid_parameter("generate: ldpc needs --dv and --dc");
            const LdpcGraph g = build_ldpc_graph(gen_n, gen_dv, gen_dc, gen_seed, gen_restarts);
            with_output(gen_out, [&](std::ostream& out) { save_graph(g, out); });
        }
    });

    // census
    auto* census_cmd = app.add_subcommand("census", "count bounded-length simple cycles");
    std::string census_graph, census_out, census_summary;
    int census_kmax = 0, census_threads = 1;
    std::uint32_t census_sample = 0;
    std::uint64_t census_seed = 1;
    bool census_with_u = false;
    census_cmd->add_option("--graph", census_graph, "graph file from `generate`")->required();
    census_cmd->add_option("--kmax", census_kmax, "largest cycle length to count")->required();
    census_cmd->add_option("--sample", census_sample, "sampled node count (0 = every node)");
    census_cmd->add_option("--seed", census_seed, "node-sampling seed (default 1)");
    census_cmd->add_flag("--with-u", census_with_u, "count information-bit nodes on cross edges");
    census_cmd->add_option("--threads", census_threads, "worker threads (default 1)");
    census_cmd->add_option("--out", census_out, "census CSV (default stdout)");
    census_cmd->add_option("--summary", census_summary, "also write the per-k summary CSV here");
    census_cmd->callback([&] {
        const AnyGraph graph = load_graph_file(census_graph);
        std::visit(
            [&](const auto& g) {
                std::vector<std::uint32_t> sample;
                if (census_sample == 0) {
                    sample.resize(g.num_nodes());
                    for (std::uint32_t i = 0; i < g.num_nodes(); ++i) sample[i] = i;
                } else {
                    rng_engine rng(census_seed);
                    sample = sample_without_replacement(g.num_nodes(), census_sample, rng);
                }
                CensusOptions opts;
                opts.with_u_nodes = census_with_u;
                opts.threads = census_threads;
                const CycleCensus result = census(g, sample, census_kmax, opts);
                with_output(census_out, [&](std::ostream& out) { write_census_csv(result, out); });
                if (!census_summary.empty())
                    with_output(census_summary,
                                [&](std::ostream& out) { write_census_summary_csv(result, out); });
            },
            graph);
    });

    // theory
    auto* theory_cmd = app.add_subcommand("theory", "emit an analytic no-cycle curve");
    std::string theory_family = "turbo", theory_out;
    std::uint64_t theory_n = 0;
    int theory_kmax = 0;
    std::uint32_t theory_dv = 0, theory_dc = 0;
    theory_cmd->add_option("--family", theory_family,
                           "turbo | turbo-with-u | turbo-closed-form | ldpc");
    theory_cmd->add_option("--n", theory_n, "chain length / variable-node count")->required();
    theory_cmd->add_option("--kmax", theory_kmax, "largest cycle length")->required();
    theory_cmd->add_option("--dv", theory_dv, "variable degree (ldpc)");
    theory_cmd->add_option("--dc", theory_dc, "check degree (ldpc)");
    theory_cmd->add_option("--out", theory_out, "output CSV (default stdout)");
    theory_cmd->callback([&] {
        CurveVariant variant;
        if (theory_family == "turbo") variant = CurveVariant::turbo;
        else if (theory_family == "turbo-with-u") variant = CurveVariant::turbo_with_u;
        else if (theory_family == "turbo-closed-form") variant = CurveVariant::turbo_closed_form;
        else if (theory_family == "ldpc") variant = CurveVariant::ldpc;
        else throw invalid_parameter("theory: unknown family '" + theory_family + "'");
        if (variant == CurveVariant::ldpc && (theory_dv == 0 || theory_dc == 0))
            throw invalid_parameter("theory: ldpc needs --dv and --dc");
        const TheoryCurve curve =
            make_theory_curve(variant, theory_n, theory_kmax, theory_dv, theory_dc);
        with_output(theory_out, [&](std::ostream& out) { write_theory_csv(curve, out); });
    });

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "run a Monte Carlo ensemble");
    SimulateArgs sim_args;
    simulate_cmd->add_option("--config", sim_args.config_path,
                             "key=value config file (default: desk-scale turbo ensemble)");
    simulate_cmd->add_option("--out", sim_args.out_path, "report CSV (default stdout)");
    simulate_cmd->add_option("--independence-out", sim_args.independence_path,
                             "also write the independence table here");
    simulate_cmd->add_option("--threads", sim_args.threads, "worker threads (default 1)");
    simulate_cmd->add_flag("--full-scale", sim_args.full_scale,
                           "allow hours-long paper-scale configurations");
    simulate_cmd
        ->add_option("--seed", sim_args.seed_override, "override the config's base seed")
        ->each([&](const std::string&) { sim_args.seed_set = true; });
    simulate_cmd->callback([&] {
        const SimulationReport report = run_from_args(sim_args);
        with_output(sim_args.out_path, [&](std::ostream& out) { write_report_csv(report, out); });
        if (!sim_args.independence_path.empty())
            with_output(sim_args.independence_path,
                        [&](std::ostream& out) { write_independence_csv(report, out); });
    });

    // independence
    auto* indep_cmd = app.add_subcommand("independence", "marginal-product vs joint table");
    SimulateArgs indep_args;
    indep_cmd->add_option("--config", indep_args.config_path, "key=value config file");
    indep_cmd->add_option("--out", indep_args.out_path, "independence CSV (default stdout)");
    indep_cmd->add_option("--threads", indep_args.threads, "worker threads (default 1)");
    indep_cmd->add_flag("--full-scale", indep_args.full_scale,
                        "allow hours-long paper-scale configurations");
    indep_cmd->add_option("--seed", indep_args.seed_override, "override the config's base seed")
        ->each([&](const std::string&) { indep_args.seed_set = true; });
    indep_cmd->callback([&] {
        const SimulationReport report = run_from_args(indep_args);
        with_output(indep_args.out_path,
                    [&](std::ostream& out) { write_independence_csv(report, out); });
    });

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "simulation report vs theory curve");
    std::string cmp_report, cmp_theory, cmp_out;
    compare_cmd->add_option("--report", cmp_report, "report CSV from `simulate`")->required();
    compare_cmd->add_option("--theory", cmp_theory, "curve CSV from `theory`")->required();
    compare_cmd->add_option("--out", cmp_out, "comparison CSV (default stdout)");
    compare_cmd->callback([&] {
        std::ifstream rep_in(cmp_report);
        if (!rep_in) throw invalid_parameter("cannot open report file: " + cmp_report);
        std::ifstream th_in(cmp_theory);
        if (!th_in) throw invalid_parameter("cannot open theory file: " + cmp_theory);
        const auto rows = compare_curves(read_report_csv(rep_in), read_theory_csv(th_in));
        with_output(cmp_out, [&](std::ostream& out) { write_compare_csv(rows, out); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const construction_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
