#pragma once

#include <cstdint>
#include <vector>

#include "drni/common.hpp"

namespace drni {

struct Arc {
    int tail;
    int head;
    bool operator==(const Arc&) const = default;
};

/// Per-arc nonnegative capacities for one scenario.
using CapacityVector = std::vector<double>;

/// Directed s-t network. Immutable after construction; safe for concurrent
/// reads. The sparse incidence (per-node arc lists) is built once: the row
/// for node i sums flow on arcs leaving i minus arcs entering i.
class Network {
public:
    Network(int node_count, int source, int sink, std::vector<Arc> arcs);

    int node_count() const { return node_count_; }
    int source() const { return source_; }
    int sink() const { return sink_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(int e) const { return arcs_[e]; }

    const std::vector<int>& arcs_out(int node) const { return out_[node]; }
    const std::vector<int>& arcs_in(int node) const { return in_[node]; }

    /// Selector d: 1 for arcs entering the sink, 0 otherwise.
    bool enters_sink(int e) const { return arcs_[e].head == sink_; }

private:
    int node_count_;
    int source_;
    int sink_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

struct ScenarioSet {
    std::vector<CapacityVector> capacities;  // one vector per scenario
    int count() const { return static_cast<int>(capacities.size()); }
};

struct InterdictionPlan {
    std::vector<std::uint8_t> removed;  // one 0/1 flag per arc
    int budget = 0;

    static InterdictionPlan none(int arc_count, int budget);
    static InterdictionPlan of_arcs(int arc_count, const std::vector<int>& arcs, int budget);
    std::vector<int> arc_indices() const;
    int cardinality() const;
    bool operator==(const InterdictionPlan& other) const { return removed == other.removed; }
};

struct MaxFlowResult {
    double value = 0.0;
    std::vector<double> flow;        // per-arc flow x
    std::vector<double> cut_arcs;    // lambda in [0,1], 1 on min-cut arcs
    std::vector<double> potentials;  // upsilon per node, sink-side indicator, 0 at s and t
};

/// Exact maximum s-t flow with capacities c_e(1-l_e), computed
/// combinatorially (shortest augmenting paths), plus a min-cut dual
/// certificate feasible for lambda + N^T upsilon - d >= 0.
MaxFlowResult max_flow(const Network& net, const CapacityVector& cap, const InterdictionPlan& plan);

/// Grid instance generator. Source feeds every node of column 1, column n
/// feeds the sink, rows connect toward the sink between adjacent columns, and
/// each vertically adjacent pair inside a column gets exactly one arc whose
/// direction is a fair coin flip on the seeded generator.
/// Arc count = 2m + m(n-1) + (m-1)n.
Network generate_grid(int rows, int cols, std::uint64_t rng_seed);

/// Largest uninterdicted max flow across scenarios (the CVaR threshold cap).
double zeta_bar(const Network& net, const ScenarioSet& scenarios);

}  // namespace drni
