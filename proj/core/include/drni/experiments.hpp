#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "drni/bnb.hpp"
#include "drni/common.hpp"
#include "drni/graph.hpp"
#include "drni/risk.hpp"

namespace drni {

/// Uniform draw in [0,1) from the top 53 bits of the generator; fixed bit
/// recipe so seeded runs reproduce across standard libraries.
double uniform01(std::mt19937_64& gen);
/// Exponential draw with the given mean via inverse transform.
double exponential(std::mt19937_64& gen, double mean);

/// Two-factor capacity model c = F xi with xi_i ~ Exp(mean mu_i).
struct FactorModel {
    std::vector<std::array<double, 2>> loadings;  // one nonnegative row per arc
    std::array<double, 2> means{1.0, 1.0};
    void validate() const;
};

/// Loadings uniform on [0,1), means uniform on [1,5), both seeded.
FactorModel random_factor_model(int arc_count, std::uint64_t seed);

ScenarioSet sample_scenarios(const FactorModel& fm, int count, std::uint64_t seed);

/// Percentage value of the randomized solution: (det - rand)/rand * 100.
double vrs(double deterministic_value, double randomized_value);

/// Monte-Carlo CVaR of the strategy under the factor model: mc_count capacity
/// draws, joint (plan, draw) flow distribution, sorted-tail CVaR.
double out_of_sample_cvar(const Network& net, const FactorModel& fm,
                          const RandomizedStrategy& strategy, const RiskSpec& risk, int mc_count,
                          std::uint64_t seed);

struct StudyParams {
    int rows = 4;
    int cols = 2;
    int scenario_count = 20;
    int budget = 1;
    double alpha = 0.05;
    std::vector<double> gammas = {0.0, 0.1, 0.5, 1.0, 10.0, 20.0};
    int instances = 20;
    int mc_count = 10000;
    std::uint64_t seed = 1;
    bool reuse_samples = false;  // reuse the same scenario draws across gamma levels
    double eps = 1e-4;
    double q_bar_value = 1.0;
    BnbConfig bnb;
};

struct InstanceRecord {
    double gamma = 0.0;
    int instance = 0;
    std::uint64_t grid_seed = 0, factor_seed = 0, scenario_seed = 0, oos_seed = 0;
    double in_sample_randomized = 0.0;
    double in_sample_deterministic = 0.0;
    double vrs_percent = 0.0;
    double oos_cvar_randomized = 0.0;
    double oos_cvar_deterministic = 0.0;
    int scenario_count = 0;
    int mc_count = 0;
    double randomized_time_ms = 0.0;
    double deterministic_time_ms = 0.0;
    std::string flag = "ok";  // "ok" or the failure reason
};

struct GammaSummary {
    double gamma = 0.0;
    int solved = 0;
    int failed = 0;
    int vrs_zero = 0;         // VRS <= 0.01 percentage points
    int vrs_small = 0;        // 0.01 < VRS < 1%
    int vrs_large = 0;        // VRS >= 1%
    double avg_vrs_large = 0.0;
    double avg_oos_randomized_large = 0.0;
    double avg_oos_deterministic_large = 0.0;
    int oos_improved_large = 0;  // among VRS >= 1%: CVaR_r < CVaR_d out of sample
};

struct ExperimentReport {
    StudyParams params;
    std::vector<InstanceRecord> records;
    std::vector<GammaSummary> summary;
};

/// Pure fold over the records; rerunning it reproduces the stored summary.
std::vector<GammaSummary> aggregate(const std::vector<InstanceRecord>& records,
                                    const std::vector<double>& gammas);

/// Full in-/out-of-sample protocol: per instance sample a grid, a factor
/// model and scenarios, solve the randomized and deterministic problems on
/// the empirical uniform reference distribution, compute the VRS, then
/// evaluate both strategies out of sample on a common draw.
ExperimentReport run_study(const StudyParams& params);

}  // namespace drni
