#include <cmath>
#include <random>

#include "doctest.h"
#include "ird/algebra.hpp"
#include "ird/json_io.hpp"
#include "ird/rng.hpp"
#include "ird/sim.hpp"

using namespace ird;

namespace {

LayeredScenario single_unit_scenario(double p, std::uint64_t rounds) {
    LayeredScenario s;
    s.dimensions = {{"d", {{"g", 1, p}}}};
    s.cases = {{"case", {"d"}}};
    s.rounds = rounds;
    return s;
}

LayeredScenario layered_demo() {
    // 30 computers / 3 labs / 1 city hardware stack plus two smaller stacks
    LayeredScenario s;
    s.dimensions = {
        {"hardware", {{"computers", 30, 0.5}, {"labs", 3, 0.1}, {"city", 1, 0.01}}},
        {"software", {{"logic", 3, 0.1}, {"license", 3, 0.01}}},
        {"communication", {{"routers", 3, 0.05}, {"city_network", 1, 0.001},
                           {"network_license", 3, 0.01}}}};
    s.cases = {{"all", {"hardware", "software", "communication"}},
               {"no-hardware", {"software", "communication"}},
               {"no-software", {"hardware", "communication"}},
               {"no-communication", {"hardware", "software"}}};
    s.rounds = 100000;
    return s;
}

}  // namespace

TEST_CASE("uniform01 is pure, in range, and matches the frozen golden draw") {
    CHECK(uniform01(1, 0, "u0", kOutageLane) == 0.058617014810225299);
    CHECK(uniform01(1, 0, "u0", kOutageLane) == uniform01(1, 0, "u0", kOutageLane));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 5000; ++i) {
        double v = uniform01(rng(), rng(), "unit" + std::to_string(i % 7),
                             (i % 2) ? kJitterLane : kOutageLane);
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    // lanes decorrelate
    CHECK(uniform01(1, 0, "u0", kOutageLane) != uniform01(1, 0, "u0", kJitterLane));
}

TEST_CASE("run_outage_scenario degenerate probabilities") {
    RngSpec rng{7};
    auto zero = run_outage_scenario(single_unit_scenario(0.0, 500), rng);
    CHECK(zero.total("case") == 0);

    auto one = run_outage_scenario(single_unit_scenario(1.0, 500), rng);
    CHECK(one.total("case") == 500);

    // cumulative series nondecreasing, totals equal final values
    for (const auto& series : one.cumulative) {
        for (size_t r = 1; r < series.size(); ++r) CHECK(series[r] >= series[r - 1]);
        CHECK(series.back() == 500);
    }
}

TEST_CASE("analytic_outage_probability closed form") {
    auto s = layered_demo();
    // hardware: 1 - (1 - 0.5^30)(1 - 0.1^3)(1 - 0.01)
    LayeredScenario hw_only = s;
    hw_only.cases = {{"hw", {"hardware"}}};
    double expected = 1.0 - (1.0 - std::pow(0.5, 30)) * (1.0 - std::pow(0.1, 3)) * (1.0 - 0.01);
    CHECK(analytic_outage_probability(hw_only, "hw") == doctest::Approx(expected).epsilon(1e-15));
    CHECK(analytic_outage_probability(hw_only, "hw") == doctest::Approx(0.0109890).epsilon(1e-4));

    // single group single unit: p_dim = p
    auto single = single_unit_scenario(0.37, 1);
    CHECK(analytic_outage_probability(single, "case") == doctest::Approx(0.37).epsilon(1e-15));

    // empty case
    LayeredScenario empty_case = single;
    empty_case.cases.push_back({"none", {}});
    CHECK(analytic_outage_probability(empty_case, "none") == 0.0);

    // jitter makes the oracle unavailable
    LayeredScenario jittered = single;
    jittered.jitter_width = 0.1;
    CHECK_THROWS_AS(analytic_outage_probability(jittered, "case"), std::invalid_argument);
}

TEST_CASE("analytic oracle is monotone in every p_unit") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    std::uniform_int_distribution<int> units(1, 4);
    for (int it = 0; it < 300; ++it) {
        LayeredScenario s;
        s.dimensions = {{"d1", {{"g1", static_cast<std::uint32_t>(units(rng)), up(rng)},
                                {"g2", static_cast<std::uint32_t>(units(rng)), up(rng)}}},
                        {"d2", {{"g3", static_cast<std::uint32_t>(units(rng)), up(rng)}}}};
        s.cases = {{"c", {"d1", "d2"}}};
        s.rounds = 1;
        double base = analytic_outage_probability(s, "c");
        auto& g = s.dimensions[it % 2].cause_groups[0];
        g.p_unit = std::min(1.0, g.p_unit + up(rng) * (1.0 - g.p_unit));
        CHECK(analytic_outage_probability(s, "c") >= base - 1e-15);
    }
}

TEST_CASE("Monte Carlo counts stay within 3 sigma of the oracle") {
    auto s = layered_demo();
    auto report = run_outage_scenario(s, RngSpec{42});
    const double n = static_cast<double>(s.rounds);
    for (const auto& c : s.cases) {
        double p = analytic_outage_probability(s, c.case_id);
        double sigma = std::sqrt(n * p * (1.0 - p));
        double observed = static_cast<double>(report.total(c.case_id));
        CHECK_MESSAGE(std::abs(observed - n * p) <= 3.0 * sigma, c.case_id, ": observed ",
                      observed, " expected ", n * p);
    }
    // leave-one-out subadditivity: one round's multi-dimension failure is one outage
    CHECK(report.total("all") <= report.total("no-hardware") + report.total("no-software") +
                                     report.total("no-communication"));
    // the no-hardware case is far lowest
    CHECK(report.total("no-hardware") * 4 < report.total("all"));
}

TEST_CASE("determinism: identical seeds give identical reports, workers irrelevant") {
    auto s = layered_demo();
    s.rounds = 5000;
    auto a = run_outage_scenario(s, RngSpec{123});
    auto b = run_outage_scenario(s, RngSpec{123});
    auto c = run_outage_scenario(s, RngSpec{123}, 4);
    CHECK(outage_csv(a) == outage_csv(b));
    CHECK(outage_csv(a) == outage_csv(c));

    auto d = run_outage_scenario(s, RngSpec{124});
    CHECK(outage_csv(a) != outage_csv(d));

    // jittered runs are deterministic too
    s.jitter_width = 0.1;
    CHECK(outage_csv(run_outage_scenario(s, RngSpec{5})) ==
          outage_csv(run_outage_scenario(s, RngSpec{5}, 3)));
}

TEST_CASE("run_weakness_scenario degenerate probabilities") {
    WeaknessScenario s;
    s.trials = 20;
    s.max_rounds_per_trial = 50;
    s.irds = {{"sure", {{"d", 1.0}}}, {"never", {{"d", 0.0}}}};
    auto report = run_weakness_scenario(s, RngSpec{1});
    REQUIRE(report.samples.size() == 40);
    for (const auto& sample : report.samples) {
        if (sample.ird_name == "sure") {
            CHECK(sample.runs_to_failure == 0);
            CHECK(!sample.censored);
        } else {
            CHECK(sample.runs_to_failure == 50);
            CHECK(sample.censored);
        }
    }
}

TEST_CASE("weakness sample mean matches the geometric oracle") {
    WeaknessScenario s;
    s.trials = 10000;
    s.max_rounds_per_trial = 1000000;
    s.irds = {{"balanced", {{"d1", 0.005}, {"d2", 0.005}, {"d3", 0.005}}}};
    auto report = run_weakness_scenario(s, RngSpec{42});

    const double p_round = 1.0 - std::pow(1.0 - 0.005, 3);
    CHECK(p_round == doctest::Approx(0.014925124999).epsilon(1e-9));
    const double mean = (1.0 - p_round) / p_round;  // successes before first failure
    const double se = std::sqrt(1.0 - p_round) / p_round / std::sqrt(10000.0);

    double sum = 0.0;
    for (const auto& sample : report.samples) {
        CHECK(!sample.censored);
        sum += static_cast<double>(sample.runs_to_failure);
    }
    double observed = sum / 10000.0;
    CHECK_MESSAGE(std::abs(observed - mean) <= 3.0 * se, "observed mean ", observed,
                  " expected ", mean);
}

TEST_CASE("redundancy_curve") {
    auto curve = redundancy_curve(0.1, 30);
    REQUIRE(curve.size() == 30);
    CHECK(curve[29] == doctest::Approx(0.957609).epsilon(1e-6));
    CHECK(curve[29] > 0.9);

    CHECK(redundancy_curve(0.5, 1)[0] == 0.5);

    // threshold crossings for p = 0.5
    auto half = redundancy_curve(0.5, 12);
    auto first_above = [&](double t) {
        for (size_t i = 0; i < half.size(); ++i)
            if (half[i] > t) return i + 1;
        return size_t{0};
    };
    CHECK(first_above(0.992) == 7);
    CHECK(half[6] == doctest::Approx(0.9921875).epsilon(1e-12));
    CHECK(first_above(0.999) == 10);
    CHECK(half[9] == doctest::Approx(0.9990234375).epsilon(1e-12));

    CHECK_THROWS_AS(redundancy_curve(1.5, 3), std::domain_error);
    CHECK_THROWS_AS(redundancy_curve(0.5, 0), std::invalid_argument);

    // strictly increasing until the double saturates at 1, and consistent
    // with the dimension-value complement
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> up(0.01, 0.99);
    std::uniform_int_distribution<std::uint64_t> nn(1, 40);
    for (int it = 0; it < 100; ++it) {
        double p = up(rng);
        std::uint64_t n = nn(rng);
        auto c = redundancy_curve(p, n);
        for (size_t i = 1; i < c.size(); ++i) {
            CHECK(c[i] >= c[i - 1]);
            if (c[i - 1] < 1.0 - 1e-9) CHECK(c[i] > c[i - 1]);
        }
        std::vector<PathParam> paths(n, PathParam{"p", 1.0 - p, {}});
        for (std::uint64_t i = 0; i < n; ++i) paths[i].path_id = "p" + std::to_string(i);
        CHECK(std::abs(dimension_value(paths).live - c[n - 1]) <= 1e-12);
    }
}

TEST_CASE("scenario JSON loading and validation") {
    const char* layered = R"({
      "rounds": 10, "jitter_width": 0.0,
      "dimensions": [{"name": "d", "cause_groups":
        [{"group_id": "g", "unit_count": 2, "p_unit": 0.5, "rule": "all_units"}]}],
      "cases": [{"case_id": "c", "dimensions": ["d"]}]
    })";
    CHECK(!is_weakness_scenario(layered));
    auto s = layered_scenario_from_json(layered);
    CHECK(s.rounds == 10);
    CHECK(s.dimensions[0].cause_groups[0].unit_count == 2);

    const char* weakness = R"({
      "trials": 5, "irds": [{"name": "w", "outages": {"d": 0.5}}]
    })";
    CHECK(is_weakness_scenario(weakness));
    auto w = weakness_scenario_from_json(weakness);
    CHECK(w.trials == 5);
    CHECK(w.max_rounds_per_trial == 10000000);

    CHECK_THROWS_AS(layered_scenario_from_json(R"({"rounds": 1, "dimensions": [], "cases":
      [{"case_id": "c", "dimensions": ["ghost"]}]})"),
                    std::invalid_argument);
}

TEST_CASE("CSV shapes") {
    auto report = run_outage_scenario(single_unit_scenario(1.0, 2), RngSpec{1});
    CHECK(outage_csv(report) ==
          "case_id,round,cumulative_outages\ncase,0,1\ncase,1,2\n");
    CHECK(oracle_csv(report) == "case_id,analytic_probability\ncase,1\n");

    WeaknessScenario w;
    w.trials = 1;
    w.max_rounds_per_trial = 3;
    w.irds = {{"x", {{"d", 0.0}}}};
    auto wr = run_weakness_scenario(w, RngSpec{1});
    CHECK(weakness_csv(wr) == "ird_name,trial,runs_to_failure,censored\nx,0,3,1\n");
}
