// Command-line front end: instance generation, global and deterministic
// solves, out-of-sample evaluation, the batch study, and the worked
// three-route example.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "drni/baseline.hpp"
#include "drni/bnb.hpp"
#include "drni/experiments.hpp"
#include "drni/io.hpp"
#include "drni/risk.hpp"

namespace {

using namespace drni;

Instance make_instance(int rows, int cols, int scenario_count, std::uint64_t seed, int budget,
                       double alpha, double gamma, double qbar) {
    const Network net = generate_grid(rows, cols, seed);
    Instance inst;
    inst.nodes = net.node_count();
    inst.source = net.source();
    inst.sink = net.sink();
    inst.arcs = net.arcs();
    inst.factor_model = random_factor_model(net.arc_count(), seed + 1);
    inst.scenarios = sample_scenarios(*inst.factor_model, scenario_count, seed + 2);
    inst.budget = budget;
    inst.alpha = alpha;
    inst.ambiguity = BudgetedAmbiguitySet::uniform(scenario_count, gamma, qbar);
    return inst;
}

int cmd_generate(int rows, int cols, int scenarios, std::uint64_t seed, int budget, double alpha,
                 double gamma, double qbar, const std::string& out) {
    const Instance inst = make_instance(rows, cols, scenarios, seed, budget, alpha, gamma, qbar);
    save_instance(inst, out);
    std::cout << "wrote " << out << " (" << inst.arcs.size() << " arcs, "
              << inst.scenarios.count() << " scenarios)\n";
    return 0;
}

int cmd_solve(const std::string& in, const std::string& out, double eps, double* gamma,
              double* alpha, int* budget, double time_limit, long max_nodes, bool verbose) {
    Instance inst = load_instance(in);
    if (gamma) inst.ambiguity.gamma = *gamma;
    if (alpha) inst.alpha = *alpha;
    if (budget) inst.budget = *budget;

    BnbConfig cfg;
    cfg.time_limit_s = time_limit;
    cfg.max_nodes = max_nodes;
    if (verbose) cfg.trace = &std::cerr;

    const Network net = inst.network();
    const SolverResult res =
        spatial_bnb(net, inst.scenarios, inst.ambiguity, inst.risk(), inst.budget, eps, cfg);
    std::cout << "worst-case CVaR " << res.value << "  gap " << res.gap << "  support "
              << res.strategy.support.size() << "  nodes " << res.stats.nodes << "  columns "
              << res.stats.columns << "  [" << res.stats.flag << "]\n";
    for (std::size_t i = 0; i < res.strategy.support.size(); ++i) {
        std::cout << "  prob " << res.strategy.probs[i] << "  arcs [";
        bool first = true;
        for (int e : res.strategy.support[i].arc_indices()) {
            if (!first) std::cout << ",";
            std::cout << e;
            first = false;
        }
        std::cout << "]\n";
    }
    if (!out.empty()) save_result(res, out);
    return 0;
}

int cmd_solve_det(const std::string& in, const std::string& out, double* gamma, double* alpha,
                  int* budget) {
    Instance inst = load_instance(in);
    if (gamma) inst.ambiguity.gamma = *gamma;
    if (alpha) inst.alpha = *alpha;
    if (budget) inst.budget = *budget;
    const Network net = inst.network();
    DeterministicResult det;
    try {
        det = solve_deterministic_milp(net, inst.scenarios, inst.ambiguity, inst.risk(),
                                       inst.budget);
    } catch (const CapExceeded&) {
        det = solve_deterministic_enumerate(net, inst.scenarios, inst.ambiguity, inst.risk(),
                                            inst.budget);
    }
    std::cout << "deterministic worst-case CVaR " << det.value << "  arcs [";
    bool first = true;
    for (int e : det.plan.arc_indices()) {
        if (!first) std::cout << ",";
        std::cout << e;
        first = false;
    }
    std::cout << "]\n";
    if (!out.empty()) save_result(as_solver_result(det), out);
    return 0;
}

int cmd_evaluate(const std::string& in, const std::string& strategy_path, int mc,
                 std::uint64_t seed, double* alpha) {
    const Instance inst = load_instance(in);
    if (!inst.factor_model)
        throw ContractViolation("instance carries no factor model; regenerate it with `generate`");
    const Network net = inst.network();
    const SolverResult strat = load_result(strategy_path, net.arc_count(), inst.budget);
    const RiskSpec risk{alpha ? *alpha : inst.alpha};
    const double cvar =
        out_of_sample_cvar(net, *inst.factor_model, strat.strategy, risk, mc, seed);
    std::cout << "out-of-sample CVaR " << cvar << "  (" << mc << " draws, seed " << seed << ")\n";
    return 0;
}

int cmd_study(const StudyParams& params, const std::string& out, const std::string& csv) {
    const ExperimentReport report = run_study(params);
    for (const auto& s : report.summary) {
        std::cout << "gamma " << s.gamma << ": solved " << s.solved << " (failed " << s.failed
                  << ")  VRS=0: " << s.vrs_zero << "  0<VRS<1%: " << s.vrs_small
                  << "  VRS>=1%: " << s.vrs_large;
        if (s.vrs_large > 0)
            std::cout << "  avg VRS " << s.avg_vrs_large << "%  oos improved "
                      << s.oos_improved_large << "/" << s.vrs_large;
        std::cout << "\n";
    }
    if (!out.empty()) save_report(report, out);
    if (!csv.empty()) save_report_csv(report, csv);
    return 0;
}

int cmd_example1(double tau, double delta, double bridge, double alpha, double eps) {
    // three parallel routes with paired congestion scenarios
    Network net(2, 0, 1, {{0, 1}, {0, 1}, {0, 1}});
    ScenarioSet scen;
    scen.capacities = {{tau - delta, tau, bridge - delta},
                       {tau, tau - delta, bridge - delta},
                       {tau - delta, tau, bridge},
                       {tau, tau - delta, bridge}};
    BudgetedAmbiguitySet amb;
    amb.q_hat.assign(4, 0.25);
    amb.q_bar.assign(4, 0.25);
    amb.gamma = 2.0;
    const RiskSpec risk{alpha};

    RandomizedStrategy u_split;
    u_split.support = {InterdictionPlan::of_arcs(3, {0, 2}, 2),
                       InterdictionPlan::of_arcs(3, {1, 2}, 2)};
    u_split.probs = {0.5, 0.5};
    const RandomizedStrategy u_both =
        RandomizedStrategy::point_mass(InterdictionPlan::of_arcs(3, {0, 1}, 2));

    std::cout << "tunnel/bridge split strategy   g_wc = "
              << worst_case_cvar(net, scen, amb, u_split, risk).value
              << "   g_avg = " << loizou_objective(net, scen, amb, u_split, risk) << "\n";
    std::cout << "both-tunnels strategy          g_wc = "
              << worst_case_cvar(net, scen, amb, u_both, risk).value
              << "   g_avg = " << loizou_objective(net, scen, amb, u_both, risk) << "\n";

    const Dominance dom = dominance_check(net, scen, amb.q_hat, u_both, u_split);
    std::cout << "stochastic dominance: ";
    switch (dom) {
        case Dominance::ADominates: std::cout << "both-tunnels dominates the split\n"; break;
        case Dominance::BDominates: std::cout << "the split dominates both-tunnels\n"; break;
        case Dominance::Equal: std::cout << "identical flow distributions\n"; break;
        case Dominance::Incomparable: std::cout << "survival functions cross\n"; break;
    }

    const SolverResult res = spatial_bnb(net, scen, amb, risk, 2, eps);
    std::cout << "global solve: value " << res.value << "  gap " << res.gap << "  support";
    for (std::size_t i = 0; i < res.strategy.support.size(); ++i) {
        std::cout << "  [";
        bool first = true;
        for (int e : res.strategy.support[i].arc_indices()) {
            if (!first) std::cout << ",";
            static const char* names[] = {"T1", "T2", "B"};
            std::cout << names[e];
            first = false;
        }
        std::cout << "]@" << res.strategy.probs[i];
    }
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributionally robust risk-averse network interdiction solver"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "sample a grid instance with a factor model");
    int rows = 4, cols = 2, scenarios = 20, budget = 1;
    std::uint64_t seed = 1;
    double alpha = 0.05, gamma = 1.0, qbar = 1.0;
    std::string out_path = "instance.json";
    gen->add_option("--rows,-m", rows, "grid rows")->check(CLI::PositiveNumber);
    gen->add_option("--cols,-n", cols, "grid columns")->check(CLI::PositiveNumber);
    gen->add_option("--scenarios,-k", scenarios, "scenario count");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--budget,-b", budget, "interdiction budget");
    gen->add_option("--alpha", alpha, "risk level in [0,1)");
    gen->add_option("--gamma", gamma, "perturbation budget");
    gen->add_option("--qbar", qbar, "deviation weight");
    gen->add_option("-o,--output", out_path, "output file");

    // solve
    auto* slv = app.add_subcommand("solve", "global randomized solve of an instance");
    std::string in_path, result_path;
    double eps = 1e-4, time_limit = kInfinity;
    long max_nodes = 100000;
    double gamma_over = 0.0, alpha_over = 0.0;
    int budget_over = 0;
    bool verbose = false;
    slv->add_option("-i,--instance", in_path, "instance file")->required();
    slv->add_option("-o,--output", result_path, "result file");
    slv->add_option("--eps", eps, "relative optimality tolerance");
    auto* g_opt = slv->add_option("--gamma", gamma_over, "override the perturbation budget");
    auto* a_opt = slv->add_option("--alpha", alpha_over, "override the risk level");
    auto* b_opt = slv->add_option("--budget", budget_over, "override the interdiction budget");
    slv->add_option("--time-limit", time_limit, "wall-clock limit in seconds");
    slv->add_option("--max-nodes", max_nodes, "node limit");
    slv->add_flag("-v,--verbose", verbose, "per-node progress on stderr");

    // solve-det
    auto* det = app.add_subcommand("solve-det", "optimal single interdiction plan");
    std::string det_in, det_out;
    double det_gamma = 0.0, det_alpha = 0.0;
    int det_budget = 0;
    det->add_option("-i,--instance", det_in, "instance file")->required();
    det->add_option("-o,--output", det_out, "result file");
    auto* dg_opt = det->add_option("--gamma", det_gamma, "override the perturbation budget");
    auto* da_opt = det->add_option("--alpha", det_alpha, "override the risk level");
    auto* db_opt = det->add_option("--budget", det_budget, "override the interdiction budget");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "out-of-sample CVaR of a stored strategy");
    std::string ev_in, ev_strategy;
    int mc = 10000;
    std::uint64_t ev_seed = 1;
    double ev_alpha = 0.0;
    ev->add_option("-i,--instance", ev_in, "instance file (with factor model)")->required();
    ev->add_option("-s,--strategy", ev_strategy, "result file with the strategy")->required();
    ev->add_option("--mc", mc, "Monte-Carlo draw count");
    ev->add_option("--seed", ev_seed, "draw seed");
    auto* ea_opt = ev->add_option("--alpha", ev_alpha, "override the risk level");

    // study
    auto* st = app.add_subcommand("study", "batch in-/out-of-sample comparison");
    StudyParams sp;
    std::string st_out, st_csv;
    st->add_option("--rows,-m", sp.rows, "grid rows");
    st->add_option("--cols,-n", sp.cols, "grid columns");
    st->add_option("--scenarios,-k", sp.scenario_count, "scenarios per instance");
    st->add_option("--budget,-b", sp.budget, "interdiction budget");
    st->add_option("--alpha", sp.alpha, "risk level");
    st->add_option("--gammas", sp.gammas, "perturbation budgets to sweep");
    st->add_option("--instances", sp.instances, "instances per gamma");
    st->add_option("--mc", sp.mc_count, "Monte-Carlo draws for out-of-sample CVaR");
    st->add_option("--seed", sp.seed, "base seed");
    st->add_option("--eps", sp.eps, "solver tolerance");
    st->add_option("--qbar", sp.q_bar_value, "deviation weight");
    st->add_flag("--reuse-samples", sp.reuse_samples,
                 "reuse the same scenario draws across gamma levels");
    st->add_option("-o,--output", st_out, "report JSON file");
    st->add_option("--csv", st_csv, "flat per-instance CSV file");

    // example1
    auto* ex = app.add_subcommand("example1", "the worked three-route example");
    double ex_tau = 3.0, ex_delta = 1.5, ex_bridge = 2.5, ex_alpha = 0.5, ex_eps = 1e-4;
    ex->add_option("--tau", ex_tau, "tunnel capacity");
    ex->add_option("--delta", ex_delta, "congestion decrease");
    ex->add_option("--bridge", ex_bridge, "bridge capacity");
    ex->add_option("--alpha", ex_alpha, "risk level");
    ex->add_option("--eps", ex_eps, "solver tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(rows, cols, scenarios, seed, budget, alpha, gamma, qbar, out_path);
        if (slv->parsed())
            return cmd_solve(in_path, result_path, eps, g_opt->count() ? &gamma_over : nullptr,
                             a_opt->count() ? &alpha_over : nullptr,
                             b_opt->count() ? &budget_over : nullptr, time_limit, max_nodes,
                             verbose);
        if (det->parsed())
            return cmd_solve_det(det_in, det_out, dg_opt->count() ? &det_gamma : nullptr,
                                 da_opt->count() ? &det_alpha : nullptr,
                                 db_opt->count() ? &det_budget : nullptr);
        if (ev->parsed())
            return cmd_evaluate(ev_in, ev_strategy, mc, ev_seed,
                                ea_opt->count() ? &ev_alpha : nullptr);
        if (st->parsed()) return cmd_study(sp, st_out, st_csv);
        if (ex->parsed()) return cmd_example1(ex_tau, ex_delta, ex_bridge, ex_alpha, ex_eps);
    } catch (const std::exception& ex_err) {
        std::cerr << "error: " << ex_err.what() << "\n";
        return 1;
    }
    return 0;
}
