#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ird/algebra.hpp"
#include "ird/canonical.hpp"
#include "ird/combine.hpp"
#include "ird/factors.hpp"
#include "ird/json_io.hpp"
#include "ird/model.hpp"
#include "ird/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertFailed = 1;
constexpr int kExitInvalid = 2;  // validation or configuration error
constexpr int kExitIo = 3;       // I/O or parse error

std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    return buf;
}

int cmd_eval(const std::string& model_file, bool weakest) {
    ird::SystemModel model = ird::model_from_json(ird::read_file(model_file));
    auto violations = ird::validate_model(model);
    if (!violations.empty()) {
        for (const auto& v : violations)
            std::cerr << "violation: " << v.entity << ": " << v.rule << "\n";
        return kExitInvalid;
    }
    ird::IRD out = ird::ird_of_model(model);
    std::cout << ird::ird_to_json(out);
    if (weakest) {
        auto [name, live] = ird::weakest_dimension(out);
        std::cout << "weakest: " << name << " " << format_probability(live) << "\n";
    }
    return kExitOk;
}

int cmd_compare(const std::string& file_a, const std::string& file_b, bool assert_first_higher) {
    ird::IRD a = ird::ird_from_json(ird::read_file(file_a));
    ird::IRD b = ird::ird_from_json(ird::read_file(file_b));
    ird::ComparisonResult r = ird::compare(a, b);
    std::cout << ird::to_string(r) << "\n";
    if (assert_first_higher && r != ird::ComparisonResult::FirstHigher) return kExitAssertFailed;
    return kExitOk;
}

ird::CfAssignment load_assignment(const std::string& cf_file) {
    if (cf_file.empty()) return {};
    return ird::cf_assignment_from_json(ird::read_file(cf_file));
}

int cmd_combine(const std::string& file_a, const std::string& file_b, const std::string& cf_file) {
    ird::IRD a = ird::ird_from_json(ird::read_file(file_a));
    ird::IRD b = ird::ird_from_json(ird::read_file(file_b));
    std::cout << ird::ird_to_json(ird::add(a, b, load_assignment(cf_file)));
    return kExitOk;
}

int cmd_subtract(const std::string& ird_file, const std::string& removal_file,
                 const std::string& cf_file) {
    ird::IRD a = ird::ird_from_json(ird::read_file(ird_file));
    auto removals = ird::removals_from_json(ird::read_file(removal_file));
    std::cout << ird::ird_to_json(ird::subtract(a, removals, load_assignment(cf_file)));
    return kExitOk;
}

int cmd_factors(const std::string& model_file, const std::string& kb_file,
                const std::vector<std::string>& declared_raw, bool fail_on_uncovered, bool table,
                double time_window) {
    ird::SystemModel model = ird::model_from_json(ird::read_file(model_file));
    ird::KnowledgeBase loaded;
    if (!kb_file.empty()) loaded = ird::kb_from_json(ird::read_file(kb_file));
    const ird::KnowledgeBase& kb = kb_file.empty() ? ird::default_knowledge_base() : loaded;
    std::set<std::string> declared;
    for (const auto& d : declared_raw) declared.insert(ird::canonicalize(d));

    auto expansion = ird::expand(declared, kb);
    ird::AuditOptions opts;
    opts.time_window_seconds = time_window;
    ird::CoverageReport report = ird::audit(model, kb, declared, opts);
    std::cout << (table ? ird::coverage_to_table(report)
                        : ird::coverage_to_json(report, expansion));
    if (fail_on_uncovered)
        for (const auto& e : report.entries)
            if (e.status == ird::CoverageStatus::Uncovered) return kExitAssertFailed;
    return kExitOk;
}

int cmd_sim(const std::string& scenario_file, std::uint64_t seed, std::int64_t rounds,
            std::int64_t trials, double jitter, bool jitter_set, const std::string& out_path,
            bool oracle, unsigned workers) {
    std::string text = ird::read_file(scenario_file);
    ird::RngSpec rng{seed};
    std::string csv;
    ird::SimReport report;
    if (ird::is_weakness_scenario(text)) {
        ird::WeaknessScenario s = ird::weakness_scenario_from_json(text);
        if (trials >= 0) s.trials = static_cast<std::uint64_t>(trials);
        if (oracle) {
            std::cerr << "--oracle applies only to layered outage scenarios\n";
            return kExitInvalid;
        }
        report = ird::run_weakness_scenario(s, rng);
        csv = ird::weakness_csv(report);
    } else {
        ird::LayeredScenario s = ird::layered_scenario_from_json(text);
        if (rounds >= 0) s.rounds = static_cast<std::uint64_t>(rounds);
        if (jitter_set) s.jitter_width = jitter;
        if (oracle && s.jitter_width != 0.0) {
            std::cerr << "--oracle requires jitter 0\n";
            return kExitInvalid;
        }
        report = ird::run_outage_scenario(s, rng, workers);
        csv = ird::outage_csv(report);
        if (oracle) {
            std::string oracle_path =
                out_path.empty() ? "oracle.csv" : out_path + ".oracle.csv";
            ird::write_file(oracle_path, ird::oracle_csv(report));
        }
    }
    if (out_path.empty())
        std::cout << csv;
    else
        ird::write_file(out_path, csv);
    return kExitOk;
}

int cmd_curve(double p, std::uint64_t n_max, const std::string& out_path) {
    auto values = ird::redundancy_curve(p, n_max);
    std::string csv = "n,probability\n";
    for (std::uint64_t n = 1; n <= n_max; ++n)
        csv += std::to_string(n) + "," + format_probability(values[n - 1]) + "\n";
    if (out_path.empty())
        std::cout << csv;
    else
        ird::write_file(out_path, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Independence redundancy degree toolkit"};
    app.require_subcommand(1);

    std::string model_file, kb_file, ird_a, ird_b, cf_file, removal_file, scenario_file, out_path;
    std::vector<std::string> declared;
    bool weakest = false, assert_first_higher = false, fail_on_uncovered = false, table = false,
         oracle = false;
    std::uint64_t seed = 42, n_max = 1;
    std::int64_t rounds = -1, trials = -1;
    double jitter = 0.0, curve_p = 0.0, time_window = 86400.0;
    unsigned workers = 1;

    auto* eval = app.add_subcommand("eval", "Compute the IRD of a system model");
    eval->add_option("model", model_file, "model JSON file")->required();
    eval->add_flag("--weakest", weakest, "also print the weakest dimension");

    auto* compare = app.add_subcommand("compare", "Compare two IRD files");
    compare->add_option("ird_a", ird_a)->required();
    compare->add_option("ird_b", ird_b)->required();
    compare->add_flag("--assert-first-higher", assert_first_higher,
                      "exit 1 unless the first IRD is higher");

    auto* combine = app.add_subcommand("combine", "Add two IRDs under a cf assignment");
    combine->add_option("ird_a", ird_a)->required();
    combine->add_option("ird_b", ird_b)->required();
    combine->add_option("--cf", cf_file, "cf assignment JSON (default: independent)");

    auto* subtract = app.add_subcommand("subtract", "Remove paths from an IRD");
    subtract->add_option("ird", ird_a)->required();
    subtract->add_option("removals", removal_file, "removal list JSON")->required();
    subtract->add_option("--cf", cf_file, "cf assignment JSON (default: independent)");

    auto* factors = app.add_subcommand("factors", "Expand declared factors and audit coverage");
    factors->add_option("model", model_file)->required();
    factors->add_option("--kb", kb_file, "knowledge base JSON (default: bundled)");
    factors->add_option("--declared", declared, "declared singleness factor ids");
    factors->add_flag("--fail-on-uncovered", fail_on_uncovered);
    factors->add_flag("--table", table, "tab-separated output instead of JSON");
    factors->add_option("--time-window", time_window,
                        "coherence window for time factors, seconds");

    auto* sim = app.add_subcommand("sim", "Run a deterministic outage or weakness simulation");
    sim->add_option("scenario", scenario_file)->required();
    sim->add_option("--seed", seed, "master seed");
    sim->add_option("--rounds", rounds, "override round count");
    sim->add_option("--trials", trials, "override trial count");
    auto* jopt = sim->add_option("--jitter", jitter, "override jitter width");
    sim->add_option("--out", out_path, "output CSV path (default: stdout)");
    sim->add_flag("--oracle", oracle, "also write analytic per-case probabilities");
    sim->add_option("--workers", workers, "parallel partitions (identical output)");

    auto* curve = app.add_subcommand("curve", "Per-n dimension success probabilities");
    curve->add_option("--p", curve_p, "per-module success probability")->required();
    curve->add_option("--n-max", n_max, "largest module count")->required();
    curve->add_option("--out", out_path, "output CSV path (default: stdout)");

    auto* kb_dump = app.add_subcommand("kb-dump", "Print the bundled default knowledge base");
    (void)kb_dump;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (eval->parsed()) return cmd_eval(model_file, weakest);
        if (compare->parsed()) return cmd_compare(ird_a, ird_b, assert_first_higher);
        if (combine->parsed()) return cmd_combine(ird_a, ird_b, cf_file);
        if (subtract->parsed()) return cmd_subtract(ird_a, removal_file, cf_file);
        if (factors->parsed())
            return cmd_factors(model_file, kb_file, declared, fail_on_uncovered, table,
                               time_window);
        if (sim->parsed())
            return cmd_sim(scenario_file, seed, rounds, trials, jitter, jopt->count() > 0,
                           out_path, oracle, workers);
        if (curve->parsed()) return cmd_curve(curve_p, n_max, out_path);
        if (kb_dump->parsed()) {
            std::cout << ird::kb_to_json(ird::default_knowledge_base());
            return kExitOk;
        }
    } catch (const ird::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ird::LookupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
