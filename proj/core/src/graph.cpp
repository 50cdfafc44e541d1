#include "drni/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

namespace drni {

namespace {
constexpr double kFlowEps = 1e-12;
}

Network::Network(int node_count, int source, int sink, std::vector<Arc> arcs)
    : node_count_(node_count), source_(source), sink_(sink), arcs_(std::move(arcs)) {
    require(node_count_ >= 2, "network needs at least source and sink");
    require(source_ != sink_, "source and sink must differ");
    require(source_ >= 0 && source_ < node_count_ && sink_ >= 0 && sink_ < node_count_,
            "terminal node id out of range");
    out_.resize(node_count_);
    in_.resize(node_count_);
    for (int e = 0; e < arc_count(); ++e) {
        const Arc& a = arcs_[e];
        require(a.tail >= 0 && a.tail < node_count_ && a.head >= 0 && a.head < node_count_,
                "arc references an invalid node");
        out_[a.tail].push_back(e);
        in_[a.head].push_back(e);
    }
}

InterdictionPlan InterdictionPlan::none(int arc_count, int budget) {
    InterdictionPlan p;
    p.removed.assign(arc_count, 0);
    p.budget = budget;
    return p;
}

InterdictionPlan InterdictionPlan::of_arcs(int arc_count, const std::vector<int>& arcs, int budget) {
    InterdictionPlan p = none(arc_count, budget);
    for (int e : arcs) {
        require(e >= 0 && e < arc_count, "interdicted arc index out of range");
        p.removed[e] = 1;
    }
    require(p.cardinality() <= budget, "plan exceeds its interdiction budget");
    return p;
}

std::vector<int> InterdictionPlan::arc_indices() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(removed.size()); ++e)
        if (removed[e]) out.push_back(e);
    return out;
}

int InterdictionPlan::cardinality() const {
    return static_cast<int>(std::count(removed.begin(), removed.end(), std::uint8_t{1}));
}

MaxFlowResult max_flow(const Network& net, const CapacityVector& cap, const InterdictionPlan& plan) {
    const int m = net.arc_count();
    require(static_cast<int>(cap.size()) == m, "capacity vector does not match arc count");
    require(static_cast<int>(plan.removed.size()) == m, "plan does not match arc count");
    for (double c : cap) require(c >= 0.0, "capacities must be nonnegative");

    MaxFlowResult res;
    res.flow.assign(m, 0.0);
    res.cut_arcs.assign(m, 0.0);
    res.potentials.assign(net.node_count(), 0.0);

    std::vector<double> residual(m);  // forward residual capacity
    for (int e = 0; e < m; ++e) residual[e] = plan.removed[e] ? 0.0 : cap[e];

    const int s = net.source(), t = net.sink();
    std::vector<int> pred_arc(net.node_count());
    std::vector<std::int8_t> pred_dir(net.node_count());  // +1 forward, -1 backward
    std::vector<std::uint8_t> seen(net.node_count());

    // shortest augmenting paths (BFS) until the sink is unreachable
    while (true) {
        std::fill(seen.begin(), seen.end(), 0);
        std::deque<int> queue{s};
        seen[s] = 1;
        bool reached = false;
        while (!queue.empty() && !reached) {
            const int v = queue.front();
            queue.pop_front();
            for (int e : net.arcs_out(v)) {
                const int w = net.arc(e).head;
                if (!seen[w] && residual[e] > kFlowEps) {
                    seen[w] = 1;
                    pred_arc[w] = e;
                    pred_dir[w] = 1;
                    if (w == t) { reached = true; break; }
                    queue.push_back(w);
                }
            }
            if (reached) break;
            for (int e : net.arcs_in(v)) {
                const int w = net.arc(e).tail;
                if (!seen[w] && res.flow[e] > kFlowEps) {
                    seen[w] = 1;
                    pred_arc[w] = e;
                    pred_dir[w] = -1;
                    if (w == t) { reached = true; break; }
                    queue.push_back(w);
                }
            }
        }
        if (!reached) break;

        double push = kInfinity;
        for (int v = t; v != s;) {
            const int e = pred_arc[v];
            if (pred_dir[v] > 0) {
                push = std::min(push, residual[e]);
                v = net.arc(e).tail;
            } else {
                push = std::min(push, res.flow[e]);
                v = net.arc(e).head;
            }
        }
        for (int v = t; v != s;) {
            const int e = pred_arc[v];
            if (pred_dir[v] > 0) {
                residual[e] -= push;
                res.flow[e] += push;
                v = net.arc(e).tail;
            } else {
                residual[e] += push;
                res.flow[e] -= push;
                v = net.arc(e).head;
            }
        }
        res.value += push;
    }

    // the final BFS 'seen' marks the source side of a minimum cut;
    // certificate: lambda = 1 on crossing arcs, upsilon = 1 on the sink side
    for (int v = 0; v < net.node_count(); ++v)
        if (!seen[v] && v != t) res.potentials[v] = 1.0;
    res.potentials[t] = 0.0;
    res.potentials[s] = 0.0;
    for (int e = 0; e < m; ++e) {
        const Arc& a = net.arc(e);
        if (seen[a.tail] && !seen[a.head]) res.cut_arcs[e] = 1.0;
    }
    return res;
}

Network generate_grid(int rows, int cols, std::uint64_t rng_seed) {
    require(rows >= 1 && cols >= 1, "grid needs at least one row and one column");
    const int m = rows, n = cols;
    const int source = 0;
    const int sink = m * n + 1;
    auto node = [m](int r, int c) { return 1 + c * m + r; };

    std::mt19937_64 rng(rng_seed);
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(2 * m + m * (n - 1) + (m - 1) * n));
    for (int c = 0; c < n; ++c) {
        if (c == 0)
            for (int r = 0; r < m; ++r) arcs.push_back({source, node(r, 0)});
        for (int r = 0; r + 1 < m; ++r) {
            // a single arc between vertically adjacent nodes, direction by coin flip
            if (rng() & 1ULL)
                arcs.push_back({node(r + 1, c), node(r, c)});  // upward
            else
                arcs.push_back({node(r, c), node(r + 1, c)});  // downward
        }
        if (c + 1 < n)
            for (int r = 0; r < m; ++r) arcs.push_back({node(r, c), node(r, c + 1)});
        else
            for (int r = 0; r < m; ++r) arcs.push_back({node(r, c), sink});
    }
    return Network(m * n + 2, source, sink, std::move(arcs));
}

double zeta_bar(const Network& net, const ScenarioSet& scenarios) {
    require(scenarios.count() > 0, "zeta_bar needs a nonempty scenario set");
    const InterdictionPlan empty = InterdictionPlan::none(net.arc_count(), 0);
    double best = 0.0;
    for (const auto& cap : scenarios.capacities)
        best = std::max(best, max_flow(net, cap, empty).value);
    return best;
}

}  // namespace drni
