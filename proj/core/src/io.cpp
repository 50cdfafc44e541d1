#include "drni/io.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

namespace drni {

using nlohmann::json;

namespace {

json instance_to_json(const Instance& inst) {
    json j;
    j["nodes"] = inst.nodes;
    j["source"] = inst.source;
    j["sink"] = inst.sink;
    json arcs = json::array();
    for (const Arc& a : inst.arcs) arcs.push_back(json::array({a.tail, a.head}));
    j["arcs"] = std::move(arcs);
    json scen = json::array();
    for (const auto& cap : inst.scenarios.capacities) scen.push_back(cap);
    j["scenarios"] = std::move(scen);
    j["budget"] = inst.budget;
    j["alpha"] = inst.alpha;
    j["q_hat"] = inst.ambiguity.q_hat;
    j["q_bar"] = inst.ambiguity.q_bar;
    j["gamma"] = inst.ambiguity.gamma;
    if (inst.factor_model) {
        json fm;
        json loads = json::array();
        for (const auto& row : inst.factor_model->loadings)
            loads.push_back(json::array({row[0], row[1]}));
        fm["loadings"] = std::move(loads);
        fm["means"] = json::array({inst.factor_model->means[0], inst.factor_model->means[1]});
        j["factor_model"] = std::move(fm);
    }
    return j;
}

Instance instance_from_json(const json& j) {
    Instance inst;
    inst.nodes = j.at("nodes").get<int>();
    inst.source = j.at("source").get<int>();
    inst.sink = j.at("sink").get<int>();
    for (const auto& a : j.at("arcs")) inst.arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
    for (const auto& s : j.at("scenarios"))
        inst.scenarios.capacities.push_back(s.get<CapacityVector>());
    inst.budget = j.at("budget").get<int>();
    inst.alpha = j.at("alpha").get<double>();
    inst.ambiguity.q_hat = j.at("q_hat").get<std::vector<double>>();
    inst.ambiguity.q_bar = j.at("q_bar").get<std::vector<double>>();
    inst.ambiguity.gamma = j.at("gamma").get<double>();
    if (j.contains("factor_model")) {
        FactorModel fm;
        for (const auto& row : j.at("factor_model").at("loadings"))
            fm.loadings.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
        fm.means[0] = j.at("factor_model").at("means").at(0).get<double>();
        fm.means[1] = j.at("factor_model").at("means").at(1).get<double>();
        inst.factor_model = std::move(fm);
    }
    return inst;
}

json result_to_json(const SolverResult& r) {
    json j;
    j["value"] = r.value;
    j["gap"] = r.gap;
    json support = json::array();
    for (std::size_t i = 0; i < r.strategy.support.size(); ++i) {
        json entry;
        entry["arcs"] = r.strategy.support[i].arc_indices();
        entry["prob"] = r.strategy.probs[i];
        support.push_back(std::move(entry));
    }
    j["support"] = std::move(support);
    j["zeta"] = r.zeta;
    j["worst_q"] = r.worst_q;
    json stats;
    stats["nodes"] = r.stats.nodes;
    stats["columns"] = r.stats.columns;
    stats["cg_iterations"] = r.stats.cg_iterations;
    stats["time_ms"] = r.stats.time_ms;
    stats["flag"] = r.stats.flag;
    j["stats"] = std::move(stats);
    return j;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ContractViolation("cannot open file for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ContractViolation("cannot open file for writing: " + path);
    return f;
}

}  // namespace

Instance read_instance(std::istream& in) { return instance_from_json(json::parse(in)); }

void write_instance(const Instance& inst, std::ostream& out) {
    out << instance_to_json(inst).dump(2) << "\n";
}

Instance load_instance(const std::string& path) {
    auto f = open_in(path);
    return read_instance(f);
}

void save_instance(const Instance& inst, const std::string& path) {
    auto f = open_out(path);
    write_instance(inst, f);
}

void write_result(const SolverResult& result, std::ostream& out) {
    out << result_to_json(result).dump(2) << "\n";
}

SolverResult read_result(std::istream& in, int arc_count, int budget) {
    const json j = json::parse(in);
    SolverResult r;
    r.value = j.at("value").get<double>();
    r.gap = j.at("gap").get<double>();
    for (const auto& entry : j.at("support")) {
        r.strategy.support.push_back(InterdictionPlan::of_arcs(
            arc_count, entry.at("arcs").get<std::vector<int>>(), budget));
        r.strategy.probs.push_back(entry.at("prob").get<double>());
    }
    if (j.contains("zeta")) r.zeta = j.at("zeta").get<double>();
    if (j.contains("worst_q")) r.worst_q = j.at("worst_q").get<std::vector<double>>();
    if (j.contains("stats")) {
        const auto& s = j.at("stats");
        r.stats.nodes = s.value("nodes", 0L);
        r.stats.columns = s.value("columns", 0L);
        r.stats.cg_iterations = s.value("cg_iterations", 0L);
        r.stats.time_ms = s.value("time_ms", 0.0);
        r.stats.flag = s.value("flag", std::string("ok"));
    }
    return r;
}

void save_result(const SolverResult& result, const std::string& path) {
    auto f = open_out(path);
    write_result(result, f);
}

SolverResult load_result(const std::string& path, int arc_count, int budget) {
    auto f = open_in(path);
    return read_result(f, arc_count, budget);
}

SolverResult as_solver_result(const DeterministicResult& det) {
    SolverResult r;
    r.strategy = RandomizedStrategy::point_mass(det.plan);
    r.value = det.value;
    r.gap = 0.0;
    r.stats.flag = "deterministic";
    return r;
}

void write_report(const ExperimentReport& report, std::ostream& out) {
    json j;
    json params;
    params["rows"] = report.params.rows;
    params["cols"] = report.params.cols;
    params["scenario_count"] = report.params.scenario_count;
    params["budget"] = report.params.budget;
    params["alpha"] = report.params.alpha;
    params["gammas"] = report.params.gammas;
    params["instances"] = report.params.instances;
    params["mc_count"] = report.params.mc_count;
    params["seed"] = report.params.seed;
    params["reuse_samples"] = report.params.reuse_samples;
    params["eps"] = report.params.eps;
    params["q_bar_value"] = report.params.q_bar_value;
    j["params"] = std::move(params);

    json records = json::array();
    for (const auto& r : report.records) {
        json rec;
        rec["gamma"] = r.gamma;
        rec["instance"] = r.instance;
        rec["grid_seed"] = r.grid_seed;
        rec["factor_seed"] = r.factor_seed;
        rec["scenario_seed"] = r.scenario_seed;
        rec["oos_seed"] = r.oos_seed;
        rec["in_sample_randomized"] = r.in_sample_randomized;
        rec["in_sample_deterministic"] = r.in_sample_deterministic;
        rec["vrs_percent"] = r.vrs_percent;
        rec["oos_cvar_randomized"] = r.oos_cvar_randomized;
        rec["oos_cvar_deterministic"] = r.oos_cvar_deterministic;
        rec["scenario_count"] = r.scenario_count;
        rec["mc_count"] = r.mc_count;
        rec["randomized_time_ms"] = r.randomized_time_ms;
        rec["deterministic_time_ms"] = r.deterministic_time_ms;
        rec["flag"] = r.flag;
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);

    json summary = json::array();
    for (const auto& s : report.summary) {
        json row;
        row["gamma"] = s.gamma;
        row["solved"] = s.solved;
        row["failed"] = s.failed;
        row["vrs_zero"] = s.vrs_zero;
        row["vrs_small"] = s.vrs_small;
        row["vrs_large"] = s.vrs_large;
        row["avg_vrs_large"] = s.avg_vrs_large;
        row["avg_oos_randomized_large"] = s.avg_oos_randomized_large;
        row["avg_oos_deterministic_large"] = s.avg_oos_deterministic_large;
        row["oos_improved_large"] = s.oos_improved_large;
        summary.push_back(std::move(row));
    }
    j["summary"] = std::move(summary);
    out << j.dump(2) << "\n";
}

void save_report(const ExperimentReport& report, const std::string& path) {
    auto f = open_out(path);
    write_report(report, f);
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
    out << "gamma,instance,grid_seed,factor_seed,scenario_seed,oos_seed,"
           "in_sample_randomized,in_sample_deterministic,vrs_percent,"
           "oos_cvar_randomized,oos_cvar_deterministic,scenario_count,mc_count,"
           "randomized_time_ms,deterministic_time_ms,flag\n";
    for (const auto& r : report.records) {
        out << r.gamma << ',' << r.instance << ',' << r.grid_seed << ',' << r.factor_seed << ','
            << r.scenario_seed << ',' << r.oos_seed << ',' << r.in_sample_randomized << ','
            << r.in_sample_deterministic << ',' << r.vrs_percent << ',' << r.oos_cvar_randomized
            << ',' << r.oos_cvar_deterministic << ',' << r.scenario_count << ',' << r.mc_count
            << ',' << r.randomized_time_ms << ',' << r.deterministic_time_ms << ',' << r.flag
            << "\n";
    }
}

void save_report_csv(const ExperimentReport& report, const std::string& path) {
    auto f = open_out(path);
    write_report_csv(report, f);
}

}  // namespace drni
