#include "drni/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "support/oracles.hpp"

using namespace drni;

namespace {

Instance sample_instance() {
    Instance inst;
    const Network net = generate_grid(3, 2, 321);
    inst.nodes = net.node_count();
    inst.source = net.source();
    inst.sink = net.sink();
    inst.arcs = net.arcs();
    inst.factor_model = random_factor_model(net.arc_count(), 322);
    inst.scenarios = sample_scenarios(*inst.factor_model, 4, 323);
    inst.budget = 1;
    inst.alpha = 0.05;
    inst.ambiguity = BudgetedAmbiguitySet::uniform(4, 1.0);
    return inst;
}

}  // namespace

TEST(InstanceIo, RoundTripsBitExactly) {
    const Instance inst = sample_instance();
    std::stringstream first, second;
    write_instance(inst, first);
    std::stringstream buf(first.str());
    const Instance back = read_instance(buf);
    write_instance(back, second);
    EXPECT_EQ(first.str(), second.str());

    ASSERT_EQ(back.arcs.size(), inst.arcs.size());
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) EXPECT_EQ(back.arcs[e], inst.arcs[e]);
    ASSERT_EQ(back.scenarios.count(), inst.scenarios.count());
    for (int k = 0; k < inst.scenarios.count(); ++k)
        for (std::size_t e = 0; e < inst.scenarios.capacities[k].size(); ++e)
            EXPECT_EQ(back.scenarios.capacities[k][e], inst.scenarios.capacities[k][e]);
    EXPECT_EQ(back.alpha, inst.alpha);
    EXPECT_EQ(back.ambiguity.gamma, inst.ambiguity.gamma);
    ASSERT_TRUE(back.factor_model.has_value());
    for (std::size_t e = 0; e < inst.factor_model->loadings.size(); ++e) {
        EXPECT_EQ(back.factor_model->loadings[e][0], inst.factor_model->loadings[e][0]);
        EXPECT_EQ(back.factor_model->loadings[e][1], inst.factor_model->loadings[e][1]);
    }
    // the parsed instance builds a working network
    const Network net = back.network();
    EXPECT_EQ(net.arc_count(), static_cast<int>(inst.arcs.size()));
}

TEST(InstanceIo, SchemaFieldNamesAreFixed) {
    const Instance inst = sample_instance();
    std::ostringstream out;
    write_instance(inst, out);
    const std::string text = out.str();
    for (const char* field : {"\"nodes\"", "\"source\"", "\"sink\"", "\"arcs\"", "\"scenarios\"",
                              "\"budget\"", "\"alpha\"", "\"q_hat\"", "\"q_bar\"", "\"gamma\""})
        EXPECT_NE(text.find(field), std::string::npos) << field;
}

TEST(ResultIo, RoundTripsStrategyAndStats) {
    SolverResult res;
    res.value = 2.5;
    res.gap = 1e-5;
    res.zeta = 2.0;
    res.worst_q = {0.25, 0.25, 0.5};
    res.strategy.support = {InterdictionPlan::of_arcs(5, {0, 3}, 2),
                            InterdictionPlan::of_arcs(5, {1}, 2)};
    res.strategy.probs = {0.75, 0.25};
    res.stats.nodes = 7;
    res.stats.columns = 4;
    res.stats.cg_iterations = 19;
    res.stats.time_ms = 12.5;
    res.stats.flag = "optimal";

    std::stringstream buf;
    write_result(res, buf);
    const SolverResult back = read_result(buf, 5, 2);
    EXPECT_EQ(back.value, res.value);
    EXPECT_EQ(back.gap, res.gap);
    ASSERT_EQ(back.strategy.support.size(), 2u);
    EXPECT_EQ(back.strategy.support[0].arc_indices(), std::vector<int>({0, 3}));
    EXPECT_EQ(back.strategy.probs[1], 0.25);
    EXPECT_EQ(back.stats.nodes, 7);
    EXPECT_EQ(back.stats.flag, "optimal");
}

TEST(ResultIo, DeterministicResultsShareTheSchema) {
    DeterministicResult det;
    det.plan = InterdictionPlan::of_arcs(4, {2}, 1);
    det.value = 1.75;
    const SolverResult res = as_solver_result(det);
    ASSERT_EQ(res.strategy.support.size(), 1u);
    EXPECT_EQ(res.strategy.probs[0], 1.0);
    std::stringstream buf;
    write_result(res, buf);
    const SolverResult back = read_result(buf, 4, 1);
    EXPECT_EQ(back.value, 1.75);
    EXPECT_EQ(back.strategy.support[0].arc_indices(), std::vector<int>({2}));
}

TEST(ReportIo, JsonAndCsvCarryEveryRecord) {
    ExperimentReport report;
    report.params.gammas = {0.0, 1.0};
    report.params.instances = 2;
    InstanceRecord r;
    r.gamma = 1.0;
    r.instance = 0;
    r.grid_seed = 42;
    r.in_sample_randomized = 1.5;
    r.in_sample_deterministic = 1.6;
    r.vrs_percent = 6.6667;
    r.oos_cvar_randomized = 1.4;
    r.oos_cvar_deterministic = 1.7;
    report.records = {r, r};
    report.records[1].instance = 1;
    report.summary = aggregate(report.records, report.params.gammas);

    std::ostringstream json_out;
    write_report(report, json_out);
    EXPECT_NE(json_out.str().find("\"records\""), std::string::npos);
    EXPECT_NE(json_out.str().find("\"summary\""), std::string::npos);
    EXPECT_NE(json_out.str().find("\"grid_seed\": 42"), std::string::npos);

    std::ostringstream csv;
    write_report_csv(report, csv);
    int lines = 0;
    std::string line;
    std::istringstream parse(csv.str());
    while (std::getline(parse, line)) ++lines;
    EXPECT_EQ(lines, 3);  // header + two records
    EXPECT_NE(csv.str().find("vrs_percent"), std::string::npos);
}

TEST(FileIo, MissingFileRaisesContractViolation) {
    EXPECT_THROW(load_instance("/nonexistent/path.json"), ContractViolation);
}
