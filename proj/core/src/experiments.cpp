#include "drni/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "drni/baseline.hpp"

namespace drni {

double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& gen, double mean) {
    require(mean > 0.0, "exponential mean must be positive");
    return -mean * std::log1p(-uniform01(gen));
}

void FactorModel::validate() const {
    require(!loadings.empty(), "factor model needs at least one arc row");
    for (const auto& row : loadings)
        require(row[0] >= 0.0 && row[1] >= 0.0, "factor loadings must be nonnegative");
    require(means[0] > 0.0 && means[1] > 0.0, "factor means must be positive");
}

FactorModel random_factor_model(int arc_count, std::uint64_t seed) {
    require(arc_count > 0, "factor model needs at least one arc");
    std::mt19937_64 gen(seed);
    FactorModel fm;
    fm.loadings.resize(arc_count);
    for (auto& row : fm.loadings) {
        row[0] = uniform01(gen);
        row[1] = uniform01(gen);
    }
    fm.means[0] = 1.0 + 4.0 * uniform01(gen);
    fm.means[1] = 1.0 + 4.0 * uniform01(gen);
    return fm;
}

ScenarioSet sample_scenarios(const FactorModel& fm, int count, std::uint64_t seed) {
    fm.validate();
    require(count > 0, "scenario count must be positive");
    std::mt19937_64 gen(seed);
    ScenarioSet out;
    out.capacities.resize(count);
    for (int k = 0; k < count; ++k) {
        const double xi0 = exponential(gen, fm.means[0]);
        const double xi1 = exponential(gen, fm.means[1]);
        CapacityVector cap(fm.loadings.size());
        for (std::size_t e = 0; e < fm.loadings.size(); ++e)
            cap[e] = fm.loadings[e][0] * xi0 + fm.loadings[e][1] * xi1;
        out.capacities[k] = std::move(cap);
    }
    return out;
}

double vrs(double deterministic_value, double randomized_value) {
    require(randomized_value > 0.0, "VRS undefined for nonpositive randomized value");
    return (deterministic_value - randomized_value) / randomized_value * 100.0;
}

double out_of_sample_cvar(const Network& net, const FactorModel& fm,
                          const RandomizedStrategy& strategy, const RiskSpec& risk, int mc_count,
                          std::uint64_t seed) {
    strategy.validate(net.arc_count());
    risk.validate();
    require(mc_count > 0, "Monte-Carlo count must be positive");
    const ScenarioSet draws = sample_scenarios(fm, mc_count, seed);

    std::vector<double> values;
    std::vector<double> probs;
    values.reserve(strategy.support.size() * draws.count());
    probs.reserve(values.capacity());
    const double per_draw = 1.0 / static_cast<double>(mc_count);
    for (std::size_t i = 0; i < strategy.support.size(); ++i) {
        if (strategy.probs[i] <= 0.0) continue;
        for (int k = 0; k < draws.count(); ++k) {
            values.push_back(max_flow(net, draws.capacities[k], strategy.support[i]).value);
            probs.push_back(strategy.probs[i] * per_draw);
        }
    }
    return cvar_discrete(values, probs, risk.alpha);
}

std::vector<GammaSummary> aggregate(const std::vector<InstanceRecord>& records,
                                    const std::vector<double>& gammas) {
    std::vector<GammaSummary> out;
    for (double g : gammas) {
        GammaSummary s;
        s.gamma = g;
        double vrs_sum = 0.0, oos_r_sum = 0.0, oos_d_sum = 0.0;
        for (const auto& r : records) {
            if (r.gamma != g) continue;
            if (r.flag != "ok") {
                ++s.failed;
                continue;
            }
            ++s.solved;
            if (r.vrs_percent <= 0.01) {
                ++s.vrs_zero;
            } else if (r.vrs_percent < 1.0) {
                ++s.vrs_small;
            } else {
                ++s.vrs_large;
                vrs_sum += r.vrs_percent;
                oos_r_sum += r.oos_cvar_randomized;
                oos_d_sum += r.oos_cvar_deterministic;
                if (r.oos_cvar_randomized < r.oos_cvar_deterministic) ++s.oos_improved_large;
            }
        }
        if (s.vrs_large > 0) {
            s.avg_vrs_large = vrs_sum / s.vrs_large;
            s.avg_oos_randomized_large = oos_r_sum / s.vrs_large;
            s.avg_oos_deterministic_large = oos_d_sum / s.vrs_large;
        }
        out.push_back(s);
    }
    return out;
}

ExperimentReport run_study(const StudyParams& params) {
    require(params.instances > 0, "study needs at least one instance");
    ExperimentReport report;
    report.params = params;

    for (std::size_t gi = 0; gi < params.gammas.size(); ++gi) {
        const double gamma = params.gammas[gi];
        for (int inst = 0; inst < params.instances; ++inst) {
            InstanceRecord rec;
            rec.gamma = gamma;
            rec.instance = inst;
            rec.scenario_count = params.scenario_count;
            rec.mc_count = params.mc_count;
            // instance data depends only on the instance index; scenario draws
            // are fresh per gamma level unless reuse is requested
            rec.grid_seed = params.seed + 1000003ULL * inst;
            rec.factor_seed = rec.grid_seed + 1;
            const std::uint64_t gamma_salt = params.reuse_samples ? 0ULL : 7919ULL * (gi + 1);
            rec.scenario_seed = rec.grid_seed + 2 + gamma_salt;
            rec.oos_seed = rec.grid_seed + 3;

            try {
                const Network net = generate_grid(params.rows, params.cols, rec.grid_seed);
                const FactorModel fm = random_factor_model(net.arc_count(), rec.factor_seed);
                const ScenarioSet scen =
                    sample_scenarios(fm, params.scenario_count, rec.scenario_seed);
                const BudgetedAmbiguitySet amb = BudgetedAmbiguitySet::uniform(
                    params.scenario_count, gamma, params.q_bar_value);
                const RiskSpec risk{params.alpha};

                const auto tr0 = std::chrono::steady_clock::now();
                const SolverResult rand_sol =
                    spatial_bnb(net, scen, amb, risk, params.budget, params.eps, params.bnb);
                rec.randomized_time_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - tr0)
                        .count();

                const auto td0 = std::chrono::steady_clock::now();
                DeterministicResult det;
                try {
                    det = solve_deterministic_milp(net, scen, amb, risk, params.budget, 2000L,
                                                   params.bnb.solver);
                } catch (const CapExceeded&) {
                    det = solve_deterministic_enumerate(net, scen, amb, risk, params.budget,
                                                        100000L, params.bnb.solver);
                }
                rec.deterministic_time_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - td0)
                        .count();

                rec.in_sample_randomized = rand_sol.value;
                rec.in_sample_deterministic = det.value;
                rec.vrs_percent = vrs(det.value, rand_sol.value);
                rec.oos_cvar_randomized =
                    out_of_sample_cvar(net, fm, rand_sol.strategy, risk, params.mc_count,
                                       rec.oos_seed);
                rec.oos_cvar_deterministic = out_of_sample_cvar(
                    net, fm, RandomizedStrategy::point_mass(det.plan), risk, params.mc_count,
                    rec.oos_seed);
            } catch (const std::exception& ex) {
                rec.flag = ex.what();
            }
            report.records.push_back(std::move(rec));
        }
    }
    report.summary = aggregate(report.records, params.gammas);
    return report;
}

}  // namespace drni
