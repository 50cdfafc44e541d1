#include "drni/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

namespace drni {

namespace {

constexpr double kSupportTol = 1e-9;

struct Node {
    IntervalBox box;
    double lb = 0.0;
    std::vector<int> support;   // pool indices with positive master weight
    std::vector<double> u;      // master weights on `support`
};

}  // namespace

CoordinateDescentResult coordinate_descent(const std::vector<std::vector<double>>& support_flows,
                                           const std::vector<double>& u_start,
                                           const IntervalBox& box,
                                           const BudgetedAmbiguitySet& amb, const RiskSpec& risk,
                                           double eps, const SolverConfig& cfg) {
    box.validate();
    require(!support_flows.empty() && support_flows.size() == u_start.size(),
            "coordinate descent needs matching support rows and weights");
    require(eps >= 0.0, "eps must be nonnegative");

    CoordinateDescentResult out;
    out.u = u_start;
    double prev = kInfinity;
    for (int round = 1; round <= 500; ++round) {
        out.rounds = round;
        const WorstCaseCvar step1 =
            worst_case_cvar_flows(support_flows, out.u, amb, risk, box.zeta_lb, box.zeta_ub, cfg);
        out.value = step1.value;
        out.zeta = step1.zeta;
        if (support_flows.size() == 1) break;  // reweighting is vacuous

        const FixedThresholdSolution step2 =
            best_strategy_at_threshold(support_flows, step1.zeta, amb, risk, cfg);
        out.u = step2.u;
        if (step2.value >= (1.0 - eps) * step1.value) break;
        if (prev - step1.value <= 1e-12 * (1.0 + std::abs(step1.value))) break;  // stationary
        prev = step1.value;
    }
    return out;
}

SolverResult spatial_bnb(const Network& net, const ScenarioSet& scenarios,
                         const BudgetedAmbiguitySet& amb, const RiskSpec& risk, int budget,
                         double eps, const BnbConfig& config) {
    require(eps > 0.0, "eps must be positive");
    require(budget >= 0, "budget must be nonnegative");
    require(scenarios.count() > 0, "empty scenario set");
    amb.validate(scenarios.count());
    risk.validate();

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_s = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    SolverResult result;
    const double zbar = zeta_bar(net, scenarios);
    ColumnPool pool = ColumnPool::initial(net, scenarios, budget);

    auto run_cg = [&](const IntervalBox& box) {
        CgResult cg = column_generation(box, net, scenarios, amb, risk, budget, pool,
                                        config.solver, config.column_cap);
        result.stats.cg_iterations += cg.iterations;
        if (cg.cap_reached) result.stats.flag = "column cap reached";
        return cg;
    };

    std::vector<Node> open;
    {
        const IntervalBox root{0.0, zbar};
        const CgResult cg = run_cg(root);
        Node n;
        n.box = root;
        n.lb = cg.lower_bound;
        n.support = cg.master.support(kSupportTol);
        for (int i : n.support) n.u.push_back(cg.master.u[i]);
        open.push_back(std::move(n));
    }

    double ub_star = kInfinity;
    double zeta_hat = std::numeric_limits<double>::quiet_NaN();
    std::vector<int> incumbent_support;
    double closed_lb = kInfinity;
    bool limit_hit = false;

    while (!open.empty()) {
        if (result.stats.nodes >= config.max_nodes || elapsed_s() > config.time_limit_s) {
            limit_hit = true;
            break;
        }
        // best-bound order, ties to the smaller left endpoint
        const auto it = std::min_element(open.begin(), open.end(), [](const Node& a, const Node& b) {
            if (a.lb != b.lb) return a.lb < b.lb;
            return a.box.zeta_lb < b.box.zeta_lb;
        });
        Node node = std::move(*it);
        open.erase(it);
        ++result.stats.nodes;

        // upper bound: coordinate descent on the master support plus the
        // incumbent support
        std::vector<int> support = node.support;
        std::vector<double> u0 = node.u;
        for (int i : incumbent_support) {
            if (std::find(support.begin(), support.end(), i) == support.end()) {
                support.push_back(i);
                u0.push_back(0.0);
            }
        }
        double mass = 0.0;
        for (double v : u0) mass += v;
        if (mass <= 0.0) {
            u0.assign(u0.size(), 1.0 / static_cast<double>(u0.size()));
        } else {
            for (double& v : u0) v /= mass;
        }
        std::vector<std::vector<double>> rows;
        rows.reserve(support.size());
        for (int i : support) rows.push_back(pool.flows()[i]);
        const CoordinateDescentResult cd =
            coordinate_descent(rows, u0, node.box, amb, risk, eps, config.solver);

        if (config.trace) {
            *config.trace << "node box=[" << node.box.zeta_lb << "," << node.box.zeta_ub
                          << "] lb=" << node.lb << " ub=" << cd.value << " UB*=" << ub_star
                          << " pool=" << pool.size() << "\n";
        }
        if (config.node_hook)
            config.node_hook(node.box, node.lb, cd.value, std::min(ub_star, cd.value));

        if (cd.value < ub_star) {
            ub_star = cd.value;
            zeta_hat = cd.zeta;
            incumbent_support.clear();
            for (std::size_t i = 0; i < support.size(); ++i)
                if (cd.u[i] > kSupportTol) incumbent_support.push_back(support[i]);
            // prune dominated nodes (non-strict)
            std::vector<Node> kept;
            for (auto& nd : open) {
                if (nd.lb >= ub_star)
                    closed_lb = std::min(closed_lb, nd.lb);
                else
                    kept.push_back(std::move(nd));
            }
            open.swap(kept);
        }

        if (cd.value > (1.0 + eps) * node.lb) {
            // branch: split toward the side of the box away from the incumbent
            double p = 0.5;
            if (!std::isnan(zeta_hat))
                p = (zeta_hat - node.box.zeta_lb) < (node.box.zeta_ub - zeta_hat) ? 0.2 : 0.8;
            std::vector<double> cuts;
            if (config.children <= 2) {
                cuts = {node.box.zeta_lb + p * node.box.width()};
            } else {
                for (int c = 1; c < config.children; ++c)
                    cuts.push_back(node.box.zeta_lb +
                                   node.box.width() * static_cast<double>(c) / config.children);
            }
            double lo = node.box.zeta_lb;
            cuts.push_back(node.box.zeta_ub);
            for (double hi : cuts) {
                const IntervalBox child{lo, hi};
                lo = hi;
                const CgResult cg = run_cg(child);
                if (cg.lower_bound >= ub_star) {
                    closed_lb = std::min(closed_lb, cg.lower_bound);
                    continue;
                }
                Node c;
                c.box = child;
                c.lb = cg.lower_bound;
                c.support = cg.master.support(kSupportTol);
                for (int i : c.support) c.u.push_back(cg.master.u[i]);
                open.push_back(std::move(c));
            }
        } else {
            closed_lb = std::min(closed_lb, node.lb);
        }
    }

    for (const auto& nd : open) closed_lb = std::min(closed_lb, nd.lb);
    if (limit_hit) result.stats.flag = "limit reached";

    // recover the strategy at the incumbent threshold over the accumulated
    // pool, with a pricing pass certifying no plan is missing, then evaluate
    // it exactly over the full threshold range
    require(!std::isnan(zeta_hat), "no incumbent produced");
    const IntervalBox point{zeta_hat, zeta_hat};
    const CgResult final_cg = run_cg(point);

    std::vector<int> support = final_cg.master.support(kSupportTol);
    std::vector<double> uvals;
    std::vector<std::vector<double>> rows;
    for (int i : support) {
        uvals.push_back(final_cg.master.u[i]);
        rows.push_back(pool.flows()[i]);
    }
    double mass = 0.0;
    for (double v : uvals) mass += v;
    for (double& v : uvals) v /= mass;

    const WorstCaseCvar wc = worst_case_cvar_flows(rows, uvals, amb, risk, 0.0, zbar, config.solver);

    for (std::size_t i = 0; i < support.size(); ++i) {
        result.strategy.support.push_back(pool.plans()[support[i]]);
        result.strategy.probs.push_back(uvals[i]);
    }
    result.value = wc.value;
    result.zeta = wc.zeta;
    result.worst_q = wc.worst_q;
    result.gap = std::max(0.0, (result.value - closed_lb) / std::max(1.0, std::abs(result.value)));
    result.stats.columns = pool.size();
    result.stats.time_ms = elapsed_s() * 1000.0;
    return result;
}

}  // namespace drni
