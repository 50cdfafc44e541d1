#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "drni/baseline.hpp"
#include "drni/bnb.hpp"
#include "drni/experiments.hpp"
#include "drni/graph.hpp"
#include "drni/risk.hpp"

namespace drni {

/// On-disk problem instance. The JSON schema is fixed: {nodes, source, sink,
/// arcs:[[tail,head]...], scenarios:[[cap...]...], budget, alpha,
/// q_hat:[...], q_bar:[...], gamma}; integers and shortest-representation
/// floats round-trip bit-exactly. A factor_model block is optional and only
/// needed for out-of-sample evaluation.
struct Instance {
    int nodes = 0;
    int source = 0;
    int sink = 0;
    std::vector<Arc> arcs;
    ScenarioSet scenarios;
    int budget = 0;
    double alpha = 0.0;
    BudgetedAmbiguitySet ambiguity;
    std::optional<FactorModel> factor_model;

    Network network() const { return Network(nodes, source, sink, arcs); }
    RiskSpec risk() const { return RiskSpec{alpha}; }
};

Instance read_instance(std::istream& in);
void write_instance(const Instance& inst, std::ostream& out);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

/// Result schema: {value, gap, support:[{arcs:[...], prob}...], stats}.
void write_result(const SolverResult& result, std::ostream& out);
SolverResult read_result(std::istream& in, int arc_count, int budget);
void save_result(const SolverResult& result, const std::string& path);
SolverResult load_result(const std::string& path, int arc_count, int budget);

/// Deterministic results reuse the same schema with a singleton support.
SolverResult as_solver_result(const DeterministicResult& det);

void write_report(const ExperimentReport& report, std::ostream& out);
void save_report(const ExperimentReport& report, const std::string& path);

/// Flat per-instance table (CSV with a header row).
void write_report_csv(const ExperimentReport& report, std::ostream& out);
void save_report_csv(const ExperimentReport& report, const std::string& path);

}  // namespace drni
