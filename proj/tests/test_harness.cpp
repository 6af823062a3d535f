#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "cycledist/simulation.hpp"

using namespace cycledist;

namespace {

ExperimentConfig tiny_turbo() {
    ExperimentConfig cfg;
    cfg.family = Family::turbo_random;
    cfg.n = 30;
    cfg.graphs = 4;
    cfg.nodes_per_graph = 6;
    cfg.k_max = 8;
    cfg.base_seed = 9;
    return cfg;
}

std::string strip_wall_time(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# wall_ms:", 0) != 0) out << line << "\n";
    return out.str();
}

} // namespace

TEST_CASE("estimate_sigma") {
    CHECK(estimate_sigma(0.5, 10000) == Catch::Approx(0.005).epsilon(1e-12));
    CHECK(estimate_sigma(1.0, 123) == 0.0);
    CHECK(estimate_sigma(0.0, 123) == 0.0);
    // the paper's k=4 column: sqrt(0.999938 * (1-0.999938) / 20000)
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.6f", estimate_sigma(0.999938, 20000));
    CHECK(std::string(buf) == "0.000056");
    CHECK_THROWS_AS(estimate_sigma(1.5, 10), invalid_parameter);
    CHECK_THROWS_AS(estimate_sigma(0.5, 0), invalid_parameter);
}

TEST_CASE("config file round-trip") {
    ExperimentConfig cfg;
    cfg.family = Family::turbo_srandom;
    cfg.n = 500;
    cfg.s = 10;
    cfg.graphs = 3;
    cfg.nodes_per_graph = 11;
    cfg.k_max = 9;
    cfg.base_seed = 77;
    std::stringstream buf;
    write_config(cfg, buf);
    const ExperimentConfig parsed = parse_config(buf);
    CHECK(parsed.family == Family::turbo_srandom);
    CHECK(parsed.n == 500);
    CHECK(parsed.s == 10);
    CHECK(parsed.graphs == 3);
    CHECK(parsed.nodes_per_graph == 11);
    CHECK(parsed.k_max == 9);
    CHECK(parsed.base_seed == 77);
    CHECK_FALSE(parsed.include_u);
}

TEST_CASE("config parsing rejects bad input") {
    auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(parse_config(in), invalid_parameter);
    };
    reject("family=hexagonal\n");
    reject("frequency=9\n");
    reject("family=turbo-random\nn=abc\n");
    reject("family=turbo-random\nkmax=70\n");
    reject("family=turbo-srandom\nn=100\n");            // missing s
    reject("family=turbo-random\ns=5\n");               // s without srandom
    reject("family=ldpc\nn=10\ndv=3\ndc=4\n");          // 30 % 4 != 0
    reject("family=ldpc\nn=10\ndv=3\ndc=6\ninclude_u=1\n");
    reject("family=turbo-random\nn=5\nnodes=100\n");    // sample > population

    std::istringstream ok("# comment\n\nfamily = turbo-random\n n = 400\ngraphs=2\nnodes=5\nkmax=6\nseed=3\ninclude_u=0\n");
    const ExperimentConfig cfg = parse_config(ok);
    CHECK(cfg.n == 400);
    CHECK(cfg.graphs == 2);
}

TEST_CASE("simulation reproducibility across thread counts") {
    const ExperimentConfig cfg = tiny_turbo();
    const SimulationReport one = run_simulation(cfg, 1);
    const SimulationReport eight = run_simulation(cfg, 8);

    std::ostringstream a, b;
    write_report_csv(one, a);
    write_report_csv(eight, b);
    CHECK(strip_wall_time(a.str()) == strip_wall_time(b.str()));
    CHECK(one.no_exact == eight.no_exact);
    CHECK(one.no_leq == eight.no_leq);
    CHECK(one.joint == eight.joint);
}

TEST_CASE("report invariants") {
    ExperimentConfig cfg = tiny_turbo();
    cfg.graphs = 6;
    cfg.nodes_per_graph = 10;
    const SimulationReport report = run_simulation(cfg, 2);

    CHECK(report.sample_size == 60);
    for (int k = 5; k <= cfg.k_max; ++k)
        CHECK(report.p_sim(k) <= report.p_sim(k - 1));  // non-increasing
    for (int k = 1; k + 1 <= cfg.k_max; ++k) {
        CHECK(report.p_joint(k) <= std::min(report.p_marginal(k), report.p_marginal(k + 1)));
    }
    // sigma column reproduces exactly from p_sim and N
    std::ostringstream csv;
    write_report_csv(report, csv);
    std::istringstream lines(csv.str());
    std::string line;
    bool in_data = false;
    while (std::getline(lines, line)) {
        if (line.rfind("k,", 0) == 0) { in_data = true; continue; }
        if (!in_data || line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        const int k = std::stoi(field);
        std::getline(row, field, ',');
        const double p = std::stod(field);
        std::getline(row, field, ',');
        char expect[16];
        std::snprintf(expect, sizeof expect, "%.6f", estimate_sigma(report.p_sim(k), report.sample_size));
        CHECK(field == expect);
        CHECK(p == Catch::Approx(report.p_sim(k)).margin(5e-7));
    }
}

TEST_CASE("single node, single graph degenerates cleanly") {
    ExperimentConfig cfg = tiny_turbo();
    cfg.graphs = 1;
    cfg.nodes_per_graph = 1;
    const SimulationReport report = run_simulation(cfg);
    CHECK(report.sample_size == 1);
    for (int k = 4; k <= cfg.k_max; ++k) {
        const double p = report.p_sim(k);
        CHECK((p == 0.0 || p == 1.0));
        CHECK(estimate_sigma(p, report.sample_size) == 0.0);
    }
}

TEST_CASE("independence table on a cycle-free sample is all ones") {
    ExperimentConfig cfg;
    cfg.family = Family::turbo_srandom;
    cfg.n = 300;
    cfg.s = 8;          // girth >= 8: no cycles below k_max=7
    cfg.graphs = 2;
    cfg.nodes_per_graph = 10;
    cfg.k_max = 7;
    cfg.base_seed = 5;
    const SimulationReport report = run_simulation(cfg);
    for (const IndependenceRow& row : independence_report(report)) {
        CHECK(row.product == 1.0);
        CHECK(row.joint == 1.0);
        CHECK(row.diff == 0.0);
    }
}

TEST_CASE("independence rows for ldpc step by two") {
    ExperimentConfig cfg;
    cfg.family = Family::ldpc;
    cfg.n = 50;
    cfg.dv = 2;
    cfg.dc = 4;
    cfg.graphs = 2;
    cfg.nodes_per_graph = 8;
    cfg.k_max = 12;
    cfg.base_seed = 31;
    const SimulationReport report = run_simulation(cfg);
    const auto rows = independence_report(report);
    REQUIRE(rows.size() == 5);  // lengths (2,4) (4,6) ... (10,12)
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].k == static_cast<int>(i) + 1);
    std::ostringstream csv;
    write_independence_csv(report, csv);
    CHECK(csv.str().rfind("k,product,joint,diff\n1,", 0) == 0);
}

TEST_CASE("compare_report") {
    ExperimentConfig cfg = tiny_turbo();
    cfg.n = 400;  // n > k so the theory column is defined
    const SimulationReport report = run_simulation(cfg);
    const TheoryCurve theory = make_theory_curve(CurveVariant::turbo, cfg.n, cfg.k_max);

    const auto rows = compare_report(report, theory);
    REQUIRE(rows.size() == static_cast<std::size_t>(cfg.k_max - 4 + 1));
    for (const CompareRow& row : rows) {
        CHECK(row.diff == Catch::Approx(row.p_sim - row.p_theory).margin(1e-12));
        CHECK(row.sigma == Catch::Approx(estimate_sigma(row.p_sim, report.sample_size)).margin(1e-12));
    }

    // theory vs theory: all differences vanish
    SimCurve self;
    self.sample_size = 100;
    self.k_min = theory.k_min;
    self.k_step = theory.k_step;
    self.p_sim = theory.values;
    for (const CompareRow& row : compare_curves(self, theory)) CHECK(row.diff == 0.0);

    const TheoryCurve shorter = make_theory_curve(CurveVariant::turbo, cfg.n, cfg.k_max - 1);
    CHECK_THROWS_AS(compare_report(report, shorter), invalid_parameter);
}

TEST_CASE("report csv round-trips through the reader") {
    ExperimentConfig cfg = tiny_turbo();
    cfg.n = 400;
    const SimulationReport report = run_simulation(cfg);
    std::stringstream buf;
    write_report_csv(report, buf);
    const SimCurve curve = read_report_csv(buf);
    CHECK(curve.sample_size == report.sample_size);
    CHECK(curve.k_min == 4);
    CHECK(curve.k_step == 1);
    REQUIRE(curve.p_sim.size() == static_cast<std::size_t>(cfg.k_max - 4 + 1));
    for (int k = 4; k <= cfg.k_max; ++k)
        CHECK(curve.p_sim[static_cast<std::size_t>(k - 4)] ==
              Catch::Approx(report.p_sim(k)).margin(5e-7));

    std::stringstream tbuf;
    write_theory_csv(make_theory_curve(CurveVariant::turbo, cfg.n, cfg.k_max), tbuf);
    const TheoryCurve parsed = read_theory_csv(tbuf);
    CHECK(parsed.k_min == 4);
    CHECK(parsed.values.size() == curve.p_sim.size());
}

TEST_CASE("with_u ensembles report from k=6") {
    ExperimentConfig cfg = tiny_turbo();
    cfg.n = 200;
    cfg.include_u = true;
    cfg.k_max = 10;
    const SimulationReport report = run_simulation(cfg);
    CHECK(report.k_min == 6);
    std::ostringstream csv;
    write_report_csv(report, csv);
    const std::string body = csv.str();
    CHECK(body.find("\n6,") != std::string::npos);
    CHECK(body.find("\n5,") == std::string::npos);
}

TEST_CASE("construction failures propagate out of the ensemble") {
    ExperimentConfig cfg;
    cfg.family = Family::turbo_srandom;
    cfg.n = 6;
    cfg.s = 6;  // infeasible spread
    cfg.graphs = 2;
    cfg.nodes_per_graph = 2;
    cfg.k_max = 4;
    cfg.max_restarts = 2;
    CHECK_THROWS_AS(run_simulation(cfg, 2), construction_failure);
}
