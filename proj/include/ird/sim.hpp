#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ird/rng.hpp"

namespace ird {

struct CauseGroup {
    std::string group_id;
    std::uint32_t unit_count = 1;
    double p_unit = 0.0;
    // rule: all_units — the group fires iff every unit fails this round.
};

struct ScenarioDimension {
    std::string name;
    std::vector<CauseGroup> cause_groups;
};

struct ScenarioCase {
    std::string case_id;
    std::vector<std::string> dimensions;  // enabled dimension names
};

struct LayeredScenario {
    std::vector<ScenarioDimension> dimensions;
    std::vector<ScenarioCase> cases;
    std::uint64_t rounds = 0;
    double jitter_width = 0.0;  // total width of the additive uniform noise

    void validate() const;
};

struct WeaknessIrd {
    std::string name;
    std::map<std::string, double> outages;  // dimension -> per-round outage probability
};

struct WeaknessScenario {
    std::vector<WeaknessIrd> irds;
    std::uint64_t trials = 0;
    std::uint64_t max_rounds_per_trial = 10'000'000;

    void validate() const;
};

struct RunSample {
    std::string ird_name;
    std::uint64_t trial = 0;
    std::uint64_t runs_to_failure = 0;  // successful rounds before the first failure
    bool censored = false;              // hit max_rounds_per_trial without failing
};

struct SimReport {
    // Outage-scenario results: cumulative[i][r] = outages of cases[i] through round r.
    std::vector<std::string> case_ids;
    std::vector<std::vector<std::uint64_t>> cumulative;
    std::map<std::string, double> analytic;  // per-case probability, jitter-0 runs only

    // Weakness-scenario results.
    std::vector<RunSample> samples;

    std::uint64_t total(const std::string& case_id) const;
};

// One shared world of unit draws per round, evaluated under every case.
// `workers` partitions rounds across threads; results are identical for any
// worker count.
SimReport run_outage_scenario(const LayeredScenario& scenario, const RngSpec& rng,
                              unsigned workers = 1);

// Exact per-round system outage probability of a case. Defined only without
// jitter.
double analytic_outage_probability(const LayeredScenario& scenario, const std::string& case_id);

SimReport run_weakness_scenario(const WeaknessScenario& scenario, const RngSpec& rng);

// Entry n (1-based) is 1 - (1 - p_success)^n.
std::vector<double> redundancy_curve(double p_success, std::uint64_t n_max);

// CSV serialization: "case_id,round,cumulative_outages" or
// "ird_name,trial,runs_to_failure,censored". UTF-8, \n newlines, no BOM.
std::string outage_csv(const SimReport& report);
std::string weakness_csv(const SimReport& report);
std::string oracle_csv(const SimReport& report);

}  // namespace ird
