#include "support/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

#include "drni/baseline.hpp"
#include "drni/master.hpp"

namespace drni::oracles {

RiverCrossing make_river_crossing(double tau, double delta, double eps_bridge) {
    // three parallel routes s -> t in order T1, T2, B
    Network net(2, 0, 1, {{0, 1}, {0, 1}, {0, 1}});
    ScenarioSet scen;
    scen.capacities = {
        {tau - delta, tau, eps_bridge - delta},
        {tau, tau - delta, eps_bridge - delta},
        {tau - delta, tau, eps_bridge},
        {tau, tau - delta, eps_bridge},
    };
    BudgetedAmbiguitySet amb;
    amb.q_hat = {0.25, 0.25, 0.25, 0.25};
    amb.q_bar = {0.25, 0.25, 0.25, 0.25};
    amb.gamma = 2.0;

    RiverCrossing rc{std::move(net),
                     std::move(scen),
                     std::move(amb),
                     tau,
                     delta,
                     eps_bridge,
                     InterdictionPlan::of_arcs(3, {0, 2}, 2),
                     InterdictionPlan::of_arcs(3, {1, 2}, 2),
                     InterdictionPlan::of_arcs(3, {0, 1}, 2),
                     InterdictionPlan::none(3, 2),
                     {},
                     {}};
    rc.u_split.support = {rc.plan_t1_b, rc.plan_t2_b};
    rc.u_split.probs = {0.5, 0.5};
    rc.u_both = RandomizedStrategy::point_mass(rc.plan_t1_t2);
    return rc;
}

std::vector<std::vector<double>> ambiguity_vertices(const BudgetedAmbiguitySet& amb) {
    const int K = static_cast<int>(amb.q_hat.size());
    std::vector<std::vector<double>> verts;

    // constraint pool in q-space: rows a^T q <= b, plus the equality sum q = 1
    struct Row {
        std::vector<double> a;
        double b;
    };
    for (int orthant = 0; orthant < (1 << K); ++orthant) {
        std::vector<Row> ineq;
        std::vector<double> budget_row(K, 0.0);
        double budget_rhs = amb.gamma;
        bool degenerate = false;
        for (int k = 0; k < K; ++k) {
            const double s = (orthant >> k) & 1 ? 1.0 : -1.0;
            std::vector<double> e(K, 0.0);
            e[k] = -1.0;
            ineq.push_back({e, 0.0});  // q_k >= 0
            if (amb.q_bar[k] <= 1e-15) {
                std::vector<double> lo(K, 0.0), hi(K, 0.0);
                lo[k] = -1.0;
                hi[k] = 1.0;
                ineq.push_back({lo, -amb.q_hat[k]});
                ineq.push_back({hi, amb.q_hat[k]});
                if (s < 0.0) degenerate = true;  // avoid double-counting the fixed coordinate
                continue;
            }
            std::vector<double> hi(K, 0.0), lo(K, 0.0), orth(K, 0.0);
            hi[k] = 1.0;
            ineq.push_back({hi, amb.q_hat[k] + amb.q_bar[k]});
            lo[k] = -1.0;
            ineq.push_back({lo, -(amb.q_hat[k] - amb.q_bar[k])});
            orth[k] = -s;
            ineq.push_back({orth, -s * amb.q_hat[k]});
            budget_row[k] = s / amb.q_bar[k];
            budget_rhs += s * amb.q_hat[k] / amb.q_bar[k];
        }
        if (degenerate) continue;
        ineq.push_back({budget_row, budget_rhs});

        const int m = static_cast<int>(ineq.size());
        // choose K-1 active inequalities + the simplex equality
        std::vector<int> combo(K - 1);
        auto rec = [&](auto&& self, int start, int depth) -> void {
            if (depth == K - 1) {
                Eigen::MatrixXd M(K, K);
                Eigen::VectorXd rhs(K);
                for (int j = 0; j < K; ++j) M(0, j) = 1.0;
                rhs[0] = 1.0;
                for (int r = 0; r < K - 1; ++r) {
                    for (int j = 0; j < K; ++j) M(r + 1, j) = ineq[combo[r]].a[j];
                    rhs[r + 1] = ineq[combo[r]].b;
                }
                Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
                if (!lu.isInvertible()) return;
                Eigen::VectorXd q = lu.solve(rhs);
                for (const Row& row : ineq) {
                    double lhs = 0.0;
                    for (int j = 0; j < K; ++j) lhs += row.a[j] * q[j];
                    if (lhs > row.b + 1e-9) return;
                }
                std::vector<double> v(K);
                for (int j = 0; j < K; ++j) v[j] = q[j];
                for (const auto& w : verts) {
                    double diff = 0.0;
                    for (int j = 0; j < K; ++j) diff = std::max(diff, std::abs(w[j] - v[j]));
                    if (diff < 1e-8) return;
                }
                verts.push_back(std::move(v));
                return;
            }
            for (int i = start; i < m; ++i) {
                combo[depth] = i;
                self(self, i + 1, depth + 1);
            }
        };
        if (K == 1) {
            verts.push_back({1.0});
        } else {
            rec(rec, 0, 0);
        }
    }
    return verts;
}

double wc_cvar_vertex_oracle(const std::vector<std::vector<double>>& flows,
                             const std::vector<double>& u, const BudgetedAmbiguitySet& amb,
                             double alpha, double zeta_hi) {
    const auto verts = ambiguity_vertices(amb);
    const int K = static_cast<int>(flows.front().size());

    std::set<double> pts{0.0, zeta_hi};
    for (const auto& row : flows)
        for (double f : row)
            if (f > 0.0 && f < zeta_hi) pts.insert(f);
    const std::vector<double> breaks(pts.begin(), pts.end());

    // exact value of the vertex envelope at one threshold
    auto envelope = [&](double zeta) {
        double best = -kInfinity;
        for (const auto& q : verts) {
            double s = zeta;
            for (int k = 0; k < K; ++k) {
                double h = 0.0;
                for (std::size_t i = 0; i < flows.size(); ++i)
                    h += u[i] * std::max(flows[i][k] - zeta, 0.0);
                s += q[k] * h / (1.0 - alpha);
            }
            best = std::max(best, s);
        }
        return best;
    };

    double best = envelope(breaks.front());
    for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
        const double a = breaks[seg], b = breaks[seg + 1];
        best = std::min(best, envelope(b));
        // on [a,b] every vertex is affine in the threshold; interior minima of
        // the upper envelope sit at pairwise crossings
        std::vector<std::pair<double, double>> lines;  // (intercept, slope)
        const double mid = 0.5 * (a + b);
        for (const auto& q : verts) {
            double c = 0.0, g = 1.0;
            for (int k = 0; k < K; ++k) {
                double hc = 0.0, hg = 0.0;
                for (std::size_t i = 0; i < flows.size(); ++i) {
                    if (flows[i][k] > mid) {
                        hc += u[i] * flows[i][k];
                        hg -= u[i];
                    }
                }
                c += q[k] * hc / (1.0 - alpha);
                g += q[k] * hg / (1.0 - alpha);
            }
            lines.emplace_back(c, g);
        }
        for (std::size_t i = 0; i < lines.size(); ++i) {
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                const double dg = lines[i].second - lines[j].second;
                if (std::abs(dg) < 1e-13) continue;
                const double z = (lines[j].first - lines[i].first) / dg;
                if (z > a && z < b) best = std::min(best, envelope(z));
            }
        }
    }
    return best;
}

double vertex_cvar_max(const std::vector<std::vector<double>>& flows, const std::vector<double>& u,
                       const BudgetedAmbiguitySet& amb, double alpha) {
    const auto verts = ambiguity_vertices(amb);
    double best = -kInfinity;
    for (const auto& q : verts) {
        std::vector<double> values, probs;
        for (std::size_t i = 0; i < flows.size(); ++i) {
            if (u[i] <= 0.0) continue;
            for (std::size_t k = 0; k < flows[i].size(); ++k) {
                values.push_back(flows[i][k]);
                probs.push_back(u[i] * q[k]);
            }
        }
        best = std::max(best, cvar_discrete(values, probs, alpha));
    }
    return best;
}

double zeta_grid_oracle(const Network& net, const ScenarioSet& scenarios,
                        const BudgetedAmbiguitySet& amb, const RiskSpec& risk, int budget,
                        int grid_points, long cap) {
    const auto universe = enumerate_plans(net.arc_count(), budget, cap);
    std::vector<std::vector<double>> flows(universe.size(),
                                           std::vector<double>(scenarios.count()));
    for (std::size_t j = 0; j < universe.size(); ++j)
        for (int k = 0; k < scenarios.count(); ++k)
            flows[j][k] = max_flow(net, scenarios.capacities[k], universe[j]).value;

    const double zbar = zeta_bar(net, scenarios);
    double best = kInfinity;
    for (int g = 0; g < grid_points; ++g) {
        const double zeta = zbar * static_cast<double>(g) / (grid_points - 1);
        best = std::min(best, best_strategy_at_threshold(flows, zeta, amb, risk).value);
    }
    return best;
}

}  // namespace drni::oracles
