#include "drni/master.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace drni {

namespace {

constexpr double kPhiDrop = 1e-12;   // scenarios below this dual weight skip pricing blocks
constexpr double kSupportTol = 1e-9;

std::string idx2(const char* stem, int i, int k) {
    return std::string(stem) + "_" + std::to_string(i) + "_" + std::to_string(k);
}
std::string idx1(const char* stem, int i) { return std::string(stem) + "_" + std::to_string(i); }

/// Variable layout of the restricted master; kept in lockstep with build_master.
struct MasterLayout {
    int t = 0, zeta = 1;
    int K = 0, L = 0;
    int w(int k) const { return 2 + 3 * k; }
    int wm(int k) const { return 2 + 3 * k + 1; }
    int beta(int k) const { return 2 + 3 * k + 2; }
    int chi() const { return 2 + 3 * K; }
    int u(int i) const { return 3 + 3 * K + 2 * i; }
    int eta(int i) const { return 3 + 3 * K + 2 * i + 1; }
    int delta(int i, int k) const { return 3 + 3 * K + 2 * L + i * K + k; }
};

}  // namespace

ColumnPool ColumnPool::initial(const Network& net, const ScenarioSet& scenarios, int budget) {
    ColumnPool pool;
    pool.add(InterdictionPlan::none(net.arc_count(), budget), net, scenarios);
    return pool;
}

int ColumnPool::add(const InterdictionPlan& plan, const Network& net, const ScenarioSet& scenarios) {
    for (int i = 0; i < size(); ++i)
        if (plans_[i] == plan) return i;
    std::vector<double> row(scenarios.count());
    for (int k = 0; k < scenarios.count(); ++k)
        row[k] = max_flow(net, scenarios.capacities[k], plan).value;
    plans_.push_back(plan);
    flows_.push_back(std::move(row));
    return size() - 1;
}

bool ColumnPool::contains(const InterdictionPlan& plan) const {
    for (const auto& p : plans_)
        if (p == plan) return true;
    return false;
}

std::vector<int> MasterSolution::support(double tol) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(u.size()); ++i)
        if (u[i] > tol) out.push_back(i);
    return out;
}

LinearModel build_master(const ColumnPool& pool, const IntervalBox& box,
                         const ScenarioSet& scenarios, const BudgetedAmbiguitySet& amb,
                         const RiskSpec& risk) {
    box.validate();
    risk.validate();
    const int K = scenarios.count();
    const int L = pool.size();
    require(L > 0, "master needs a nonempty column pool");
    amb.validate(K);

    const double lo = box.zeta_lb, hi = box.zeta_ub;
    LinearModel lp;
    lp.add_variable("t", -kInfinity, kInfinity, 1.0);
    lp.add_variable("zeta", lo, hi, 0.0);
    for (int k = 0; k < K; ++k) {
        lp.add_variable(idx1("w", k), 0.0, kInfinity, 0.0);
        lp.add_variable(idx1("wm", k), 0.0, kInfinity, 0.0);
        lp.add_variable(idx1("beta", k), -kInfinity, kInfinity, 0.0);
    }
    lp.add_variable("chi", 0.0, kInfinity, 0.0);
    for (int i = 0; i < L; ++i) {
        lp.add_variable(idx1("u", i), 0.0, kInfinity, 0.0);
        lp.add_variable(idx1("eta", i), -kInfinity, kInfinity, 0.0);
    }
    for (int i = 0; i < L; ++i)
        for (int k = 0; k < K; ++k) lp.add_variable(idx2("delta", i, k), 0.0, kInfinity, 0.0);

    MasterLayout lay;
    lay.K = K;
    lay.L = L;
    const double inv_tail = 1.0 / (1.0 - risk.alpha);

    for (int k = 0; k < K; ++k) {
        std::vector<std::pair<int, double>> row{{lay.zeta, 1.0}, {lay.chi(), amb.gamma}, {lay.t, -1.0}};
        for (int kk = 0; kk < K; ++kk) {
            row.emplace_back(lay.w(kk), 1.0);
            row.emplace_back(lay.wm(kk), 1.0);
            row.emplace_back(lay.beta(kk), amb.q_hat[kk]);
        }
        row.emplace_back(lay.beta(k), -1.0);
        for (int i = 0; i < L; ++i) row.emplace_back(lay.delta(i, k), inv_tail);
        lp.add_constraint(idx1("epi", k), std::move(row), RowSense::LessEqual, 0.0);
    }
    for (int k = 0; k < K; ++k) {
        lp.add_constraint(idx1("devp", k),
                          {{lay.beta(k), amb.q_bar[k]}, {lay.w(k), -1.0}, {lay.chi(), -1.0}},
                          RowSense::LessEqual, 0.0);
        lp.add_constraint(idx1("devm", k),
                          {{lay.beta(k), -amb.q_bar[k]}, {lay.wm(k), -1.0}, {lay.chi(), -1.0}},
                          RowSense::LessEqual, 0.0);
    }
    {
        std::vector<std::pair<int, double>> usum, etasum{{lay.zeta, -1.0}};
        for (int i = 0; i < L; ++i) {
            usum.emplace_back(lay.u(i), 1.0);
            etasum.emplace_back(lay.eta(i), 1.0);
        }
        lp.add_constraint("usum", std::move(usum), RowSense::Equal, 1.0);
        lp.add_constraint("etasum", std::move(etasum), RowSense::Equal, 0.0);
    }
    for (int i = 0; i < L; ++i) {
        // McCormick envelopes of eta = u * zeta over [0,1] x [lo,hi]. The two
        // zeta-coupled envelopes (eta >= zeta + hi(u-1), eta <= zeta + lo(u-1))
        // are implied by the eta-sum row with these and the normalization, and
        // carrying them would let the solver park dual weight on them that the
        // pricing objective cannot see; leaving them out pins the canonical
        // duals without changing the feasible set.
        lp.add_constraint(idx1("mc_lo_u", i), {{lay.u(i), lo}, {lay.eta(i), -1.0}},
                          RowSense::LessEqual, 0.0);
        lp.add_constraint(idx1("mc_hi_u", i), {{lay.eta(i), 1.0}, {lay.u(i), -hi}},
                          RowSense::LessEqual, 0.0);
    }
    const auto& flows = pool.flows();
    for (int i = 0; i < L; ++i)
        for (int k = 0; k < K; ++k)
            lp.add_constraint(idx2("del", i, k),
                              {{lay.u(i), flows[i][k]}, {lay.eta(i), -1.0}, {lay.delta(i, k), -1.0}},
                              RowSense::LessEqual, 0.0);
    return lp;
}

MasterSolution solve_master(const ColumnPool& pool, const IntervalBox& box,
                            const ScenarioSet& scenarios, const BudgetedAmbiguitySet& amb,
                            const RiskSpec& risk, const SolverConfig& cfg) {
    const LinearModel lp = build_master(pool, box, scenarios, amb, risk);
    const LpSolution sol = solve_lp(lp, cfg);
    if (sol.status != SolveStatus::Optimal)
        throw NumericalError("restricted master did not solve to optimality");

    const int K = scenarios.count();
    const int L = pool.size();
    MasterLayout lay;
    lay.K = K;
    lay.L = L;

    MasterSolution out;
    out.objective = sol.objective;
    out.zeta = sol.primal[lay.zeta];
    out.chi = sol.primal[lay.chi()];
    out.u.resize(L);
    out.eta.resize(L);
    for (int i = 0; i < L; ++i) {
        out.u[i] = std::max(0.0, sol.primal[lay.u(i)]);
        out.eta[i] = sol.primal[lay.eta(i)];
    }
    out.w.resize(K);
    out.wminus.resize(K);
    out.beta.resize(K);
    for (int k = 0; k < K; ++k) {
        out.w[k] = sol.primal[lay.w(k)];
        out.wminus[k] = sol.primal[lay.wm(k)];
        out.beta[k] = sol.primal[lay.beta(k)];
    }
    out.delta.assign(L, std::vector<double>(K));
    for (int i = 0; i < L; ++i)
        for (int k = 0; k < K; ++k) out.delta[i][k] = sol.primal[lay.delta(i, k)];

    out.duals.phi.resize(K);
    for (int k = 0; k < K; ++k)
        out.duals.phi[k] = std::max(0.0, -sol.dual(lp, idx1("epi", k)));
    out.duals.p = -sol.dual(lp, "usum");
    out.duals.pi = -sol.dual(lp, "etasum");
    return out;
}

PricingResult price(const MasterDuals& duals, const IntervalBox& box, const Network& net,
                    const ScenarioSet& scenarios, int budget, const RiskSpec& risk,
                    const SolverConfig& cfg) {
    box.validate();
    risk.validate();
    const int K = scenarios.count();
    const int E = net.arc_count();
    require(static_cast<int>(duals.phi.size()) == K, "dual vector does not match scenario count");
    require(budget >= 0, "budget must be nonnegative");

    std::vector<int> active;
    for (int k = 0; k < K; ++k)
        if (duals.phi[k] > kPhiDrop) active.push_back(k);

    const double inv_tail = 1.0 / (1.0 - risk.alpha);
    LinearModel mip;
    std::vector<int> ell(E);
    for (int e = 0; e < E; ++e) ell[e] = mip.add_variable(idx1("l", e), 0.0, 1.0, 0.0);
    const int eta = mip.add_variable("eta", box.zeta_lb, box.zeta_ub, duals.pi);

    for (int k : active) {
        const auto& cap = scenarios.capacities[k];
        const int dk = mip.add_variable(idx1("D", k), 0.0, kInfinity, duals.phi[k] * inv_tail);
        std::vector<int> lam(E), prod(E, -1);
        for (int e = 0; e < E; ++e) lam[e] = mip.add_variable(idx2("lam", k, e), 0.0, 1.0, 0.0);
        std::vector<int> ups(net.node_count(), -1);
        for (int v = 0; v < net.node_count(); ++v)
            if (v != net.source() && v != net.sink())
                ups[v] = mip.add_variable(idx2("y", k, v), -kInfinity, kInfinity, 0.0);

        std::vector<std::pair<int, double>> cut{{dk, -1.0}, {eta, -1.0}};
        for (int e = 0; e < E; ++e) {
            if (cap[e] <= 0.0) continue;
            prod[e] = mip.add_variable(idx2("p", k, e), 0.0, 1.0, 0.0);
            cut.emplace_back(lam[e], cap[e]);
            cut.emplace_back(prod[e], -cap[e]);
        }
        mip.add_constraint(idx1("cut", k), std::move(cut), RowSense::LessEqual, 0.0);
        for (int e = 0; e < E; ++e) {
            if (prod[e] < 0) continue;
            // prod = l * lambda linearized over binaries
            mip.add_constraint(idx2("pl", k, e), {{prod[e], 1.0}, {ell[e], -1.0}},
                               RowSense::LessEqual, 0.0);
            mip.add_constraint(idx2("pm", k, e), {{prod[e], 1.0}, {lam[e], -1.0}},
                               RowSense::LessEqual, 0.0);
            mip.add_constraint(idx2("pg", k, e), {{lam[e], 1.0}, {ell[e], 1.0}, {prod[e], -1.0}},
                               RowSense::LessEqual, 1.0);
        }
        for (int e = 0; e < E; ++e) {
            // min-cut dual feasibility: lambda + N^T upsilon >= d
            std::vector<std::pair<int, double>> row{{lam[e], 1.0}};
            const Arc& a = net.arc(e);
            if (ups[a.tail] >= 0) row.emplace_back(ups[a.tail], 1.0);
            if (ups[a.head] >= 0) row.emplace_back(ups[a.head], -1.0);
            mip.add_constraint(idx2("dual", k, e), std::move(row), RowSense::GreaterEqual,
                               net.enters_sink(e) ? 1.0 : 0.0);
        }
    }
    {
        std::vector<std::pair<int, double>> row;
        for (int e = 0; e < E; ++e) row.emplace_back(ell[e], 1.0);
        mip.add_constraint("budget", std::move(row), RowSense::LessEqual, budget);
    }

    SolverConfig tight = cfg;
    tight.mip_gap = std::min(cfg.mip_gap, 1e-8);
    const MipSolution sol = solve_mip(mip, ell, tight);
    if (sol.status != SolveStatus::Optimal)
        throw NumericalError("pricing problem did not solve to optimality");

    PricingResult out;
    out.value = sol.objective + duals.p;
    out.plan = InterdictionPlan::none(E, budget);
    for (int e = 0; e < E; ++e) out.plan.removed[e] = sol.primal[ell[e]] > 0.5 ? 1 : 0;
    return out;
}

PricingResult price_enumerate(const MasterDuals& duals, const IntervalBox& box, const Network& net,
                              const ScenarioSet& scenarios, int budget, const RiskSpec& risk,
                              long enumeration_cap, const SolverConfig& cfg) {
    (void)cfg;
    box.validate();
    risk.validate();
    const int K = scenarios.count();
    const int E = net.arc_count();
    require(static_cast<int>(duals.phi.size()) == K, "dual vector does not match scenario count");
    if (count_plans(E, budget, enumeration_cap) > enumeration_cap)
        throw CapExceeded("plan enumeration would exceed the configured cap");

    std::vector<int> active;
    for (int k = 0; k < K; ++k)
        if (duals.phi[k] > kPhiDrop) active.push_back(k);
    const double inv_tail = 1.0 / (1.0 - risk.alpha);

    PricingResult best;
    best.value = kInfinity;

    InterdictionPlan plan = InterdictionPlan::none(E, budget);
    std::vector<double> fk(active.size());
    // lexicographic depth-first enumeration: a prefix is visited before its
    // extensions, so the first strict improvement wins ties
    auto evaluate = [&]() {
        for (std::size_t a = 0; a < active.size(); ++a)
            fk[a] = max_flow(net, scenarios.capacities[active[a]], plan).value;
        double h_best = kInfinity;
        auto h = [&](double etav) {
            double s = duals.pi * etav;
            for (std::size_t a = 0; a < active.size(); ++a)
                s += duals.phi[active[a]] * inv_tail * std::max(fk[a] - etav, 0.0);
            return s;
        };
        h_best = std::min(h(box.zeta_lb), h(box.zeta_ub));
        for (double f : fk)
            if (f > box.zeta_lb && f < box.zeta_ub) h_best = std::min(h_best, h(f));
        const double v = h_best + duals.p;
        if (v < best.value - 1e-12) {
            best.value = v;
            best.plan = plan;
        }
    };

    auto dfs = [&](auto&& self, int start, int used) -> void {
        evaluate();
        if (used == budget) return;
        for (int e = start; e < E; ++e) {
            plan.removed[e] = 1;
            self(self, e + 1, used + 1);
            plan.removed[e] = 0;
        }
    };
    dfs(dfs, 0, 0);
    return best;
}

CgResult column_generation(const IntervalBox& box, const Network& net,
                           const ScenarioSet& scenarios, const BudgetedAmbiguitySet& amb,
                           const RiskSpec& risk, int budget, ColumnPool& pool,
                           const SolverConfig& cfg, int column_cap, std::ostream* trace) {
    box.validate();
    require(pool.size() > 0, "column generation needs an initialized pool");

    CgResult out;
    for (int iter = 1;; ++iter) {
        out.iterations = iter;
        out.master = solve_master(pool, box, scenarios, amb, risk, cfg);
        const PricingResult pr = price(out.master.duals, box, net, scenarios, budget, risk, cfg);
        out.last_pricing_value = pr.value;
        if (trace) {
            *trace << "cg iter=" << iter << " pool=" << pool.size()
                   << " master=" << out.master.objective << " v=" << pr.value << " arcs=[";
            bool first = true;
            for (int e : pr.plan.arc_indices()) {
                if (!first) *trace << ",";
                *trace << e;
                first = false;
            }
            *trace << "]\n";
        }

        const double cutoff = -cfg.optimality_tol * (1.0 + std::abs(out.master.objective));
        if (pr.value >= cutoff) {
            out.lower_bound = out.master.objective + std::min(0.0, pr.value);
            out.cap_reached = false;
            return out;
        }
        if (pool.contains(pr.plan) || iter >= column_cap) {
            // stalled or capped: shift the strategy-normalization dual by the
            // outstanding reduced cost, which keeps the bound valid
            out.lower_bound = out.master.objective + std::min(0.0, pr.value);
            out.cap_reached = true;
            return out;
        }
        pool.add(pr.plan, net, scenarios);
    }
}

long count_plans(int arc_count, int budget, long cap) {
    long total = 0;
    double binom = 1.0;
    for (int j = 0; j <= std::min(budget, arc_count); ++j) {
        if (j > 0) binom = binom * (arc_count - j + 1) / j;
        if (binom > static_cast<double>(cap) || (total += static_cast<long>(binom)) > cap)
            return cap + 1;
    }
    return total;
}

}  // namespace drni
