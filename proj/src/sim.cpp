#include "ird/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <thread>

namespace ird {

static void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error(what + " out of range [0,1]: " + std::to_string(p));
}

void LayeredScenario::validate() const {
    std::set<std::string> names;
    for (const auto& d : dimensions) {
        if (d.name.empty()) throw std::invalid_argument("dimension name empty");
        if (!names.insert(d.name).second)
            throw std::invalid_argument("duplicate dimension name: " + d.name);
        if (d.cause_groups.empty())
            throw std::invalid_argument("dimension has no cause groups: " + d.name);
        for (const auto& g : d.cause_groups) {
            if (g.unit_count < 1)
                throw std::invalid_argument("unit_count < 1 in group " + g.group_id);
            check_probability(g.p_unit, "p_unit of group " + g.group_id);
        }
    }
    for (const auto& c : cases)
        for (const auto& dn : c.dimensions)
            if (!names.count(dn))
                throw std::invalid_argument("case " + c.case_id + " references unknown dimension " +
                                            dn);
    check_probability(jitter_width, "jitter_width");
}

void WeaknessScenario::validate() const {
    for (const auto& w : irds) {
        if (w.name.empty()) throw std::invalid_argument("IRD name empty");
        if (w.outages.empty())
            throw std::invalid_argument("IRD has no dimensions: " + w.name);
        for (const auto& [dim, p] : w.outages)
            check_probability(p, "outage probability of " + w.name + "/" + dim);
    }
    if (max_rounds_per_trial == 0)
        throw std::invalid_argument("max_rounds_per_trial must be positive");
}

std::uint64_t SimReport::total(const std::string& case_id) const {
    for (size_t i = 0; i < case_ids.size(); ++i)
        if (case_ids[i] == case_id)
            return cumulative[i].empty() ? 0 : cumulative[i].back();
    throw std::invalid_argument("unknown case: " + case_id);
}

namespace {

struct UnitRef {
    std::string id;  // dimension/group/index
    double p_unit;
};

struct GroupPlan {
    std::vector<UnitRef> units;
};

struct DimensionPlan {
    std::vector<GroupPlan> groups;
};

std::vector<DimensionPlan> build_plan(const LayeredScenario& scenario) {
    std::vector<DimensionPlan> plan;
    for (const auto& d : scenario.dimensions) {
        DimensionPlan dp;
        for (const auto& g : d.cause_groups) {
            GroupPlan gp;
            for (std::uint32_t u = 0; u < g.unit_count; ++u)
                gp.units.push_back({d.name + "/" + g.group_id + "/" + std::to_string(u), g.p_unit});
            dp.groups.push_back(std::move(gp));
        }
        plan.push_back(std::move(dp));
    }
    return plan;
}

// Per-round dimension outage flags for one shared world of unit draws.
void evaluate_round(const std::vector<DimensionPlan>& plan, std::uint64_t seed,
                    std::uint64_t round, double jitter_width, std::vector<char>& dim_out) {
    for (size_t di = 0; di < plan.size(); ++di) {
        bool out = false;
        for (const auto& g : plan[di].groups) {
            bool all_fail = true;
            for (const auto& u : g.units) {
                double p = u.p_unit;
                if (jitter_width > 0.0) {
                    double j = uniform01(seed, round, u.id, kJitterLane);
                    p = std::clamp(p + j * jitter_width - jitter_width / 2.0, 0.0, 1.0);
                }
                if (!(uniform01(seed, round, u.id, kOutageLane) < p)) {
                    all_fail = false;
                    break;
                }
            }
            if (all_fail) {
                out = true;
                break;
            }
        }
        dim_out[di] = out ? 1 : 0;
    }
}

}  // namespace

SimReport run_outage_scenario(const LayeredScenario& scenario, const RngSpec& rng,
                              unsigned workers) {
    scenario.validate();
    if (workers == 0) workers = 1;

    auto plan = build_plan(scenario);

    // Map case dimension names to plan indices.
    std::vector<std::vector<size_t>> case_dims;
    for (const auto& c : scenario.cases) {
        std::vector<size_t> idx;
        for (const auto& dn : c.dimensions)
            for (size_t di = 0; di < scenario.dimensions.size(); ++di)
                if (scenario.dimensions[di].name == dn) idx.push_back(di);
        case_dims.push_back(std::move(idx));
    }

    const std::uint64_t rounds = scenario.rounds;
    const size_t ncases = scenario.cases.size();
    // outage flag per round per case, filled by the partition owning the round
    std::vector<std::vector<char>> case_out(ncases, std::vector<char>(rounds, 0));

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<char> dim_out(plan.size(), 0);
        for (std::uint64_t r = begin; r < end; ++r) {
            evaluate_round(plan, rng.master_seed, r, scenario.jitter_width, dim_out);
            for (size_t ci = 0; ci < ncases; ++ci) {
                bool out = false;
                for (size_t di : case_dims[ci])
                    if (dim_out[di]) {
                        out = true;
                        break;
                    }
                case_out[ci][r] = out ? 1 : 0;
            }
        }
    };

    if (workers == 1 || rounds < 2) {
        run_range(0, rounds);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (rounds + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t b = std::min<std::uint64_t>(rounds, w * chunk);
            std::uint64_t e = std::min<std::uint64_t>(rounds, b + chunk);
            if (b < e) pool.emplace_back(run_range, b, e);
        }
        for (auto& t : pool) t.join();
    }

    SimReport report;
    for (const auto& c : scenario.cases) report.case_ids.push_back(c.case_id);
    report.cumulative.assign(ncases, {});
    for (size_t ci = 0; ci < ncases; ++ci) {
        report.cumulative[ci].resize(rounds);
        std::uint64_t acc = 0;
        for (std::uint64_t r = 0; r < rounds; ++r) {
            acc += case_out[ci][r];
            report.cumulative[ci][r] = acc;
        }
    }
    if (scenario.jitter_width == 0.0)
        for (const auto& c : scenario.cases)
            report.analytic[c.case_id] = analytic_outage_probability(scenario, c.case_id);
    return report;
}

double analytic_outage_probability(const LayeredScenario& scenario, const std::string& case_id) {
    if (scenario.jitter_width != 0.0)
        throw std::invalid_argument("analytic oracle is defined only for jitter_width 0");
    const ScenarioCase* c = nullptr;
    for (const auto& sc : scenario.cases)
        if (sc.case_id == case_id) c = &sc;
    if (!c) throw std::invalid_argument("unknown case: " + case_id);

    double live_all = 1.0;
    for (const auto& dn : c->dimensions) {
        for (const auto& d : scenario.dimensions) {
            if (d.name != dn) continue;
            double dim_live = 1.0;
            for (const auto& g : d.cause_groups)
                dim_live *= 1.0 - std::pow(g.p_unit, static_cast<double>(g.unit_count));
            live_all *= dim_live;
        }
    }
    return 1.0 - live_all;
}

SimReport run_weakness_scenario(const WeaknessScenario& scenario, const RngSpec& rng) {
    scenario.validate();
    SimReport report;
    for (const auto& w : scenario.irds) {
        for (std::uint64_t trial = 0; trial < scenario.trials; ++trial) {
            const std::uint64_t base = trial * scenario.max_rounds_per_trial;
            RunSample sample;
            sample.ird_name = w.name;
            sample.trial = trial;
            sample.censored = true;
            sample.runs_to_failure = scenario.max_rounds_per_trial;
            for (std::uint64_t r = 0; r < scenario.max_rounds_per_trial; ++r) {
                bool failed = false;
                for (const auto& [dim, p] : w.outages) {
                    if (uniform01(rng.master_seed, base + r, w.name + "/" + dim, kOutageLane) < p) {
                        failed = true;
                        break;
                    }
                }
                if (failed) {
                    sample.censored = false;
                    sample.runs_to_failure = r;  // failure round excluded
                    break;
                }
            }
            report.samples.push_back(std::move(sample));
        }
    }
    return report;
}

std::vector<double> redundancy_curve(double p_success, std::uint64_t n_max) {
    check_probability(p_success, "p_success");
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    std::vector<double> out;
    out.reserve(n_max);
    double all_fail = 1.0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        all_fail *= 1.0 - p_success;
        out.push_back(1.0 - all_fail);
    }
    return out;
}

std::string outage_csv(const SimReport& report) {
    std::string out = "case_id,round,cumulative_outages\n";
    for (size_t ci = 0; ci < report.case_ids.size(); ++ci)
        for (std::uint64_t r = 0; r < report.cumulative[ci].size(); ++r)
            out += report.case_ids[ci] + "," + std::to_string(r) + "," +
                   std::to_string(report.cumulative[ci][r]) + "\n";
    return out;
}

std::string weakness_csv(const SimReport& report) {
    std::string out = "ird_name,trial,runs_to_failure,censored\n";
    for (const auto& s : report.samples)
        out += s.ird_name + "," + std::to_string(s.trial) + "," +
               std::to_string(s.runs_to_failure) + "," + (s.censored ? "1" : "0") + "\n";
    return out;
}

std::string oracle_csv(const SimReport& report) {
    std::string out = "case_id,analytic_probability\n";
    char buf[64];
    for (const auto& [case_id, p] : report.analytic) {
        std::snprintf(buf, sizeof(buf), "%.17g", p);
        out += case_id + "," + buf + "\n";
    }
    return out;
}

}  // namespace ird
