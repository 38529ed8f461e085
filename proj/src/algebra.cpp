#include "ird/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace ird {

std::string to_string(ComparisonResult r) {
    switch (r) {
        case ComparisonResult::FirstHigher: return "first-higher";
        case ComparisonResult::SecondHigher: return "second-higher";
        case ComparisonResult::Equal: return "equal";
        case ComparisonResult::Incomparable: return "incomparable";
    }
    return "incomparable";
}

static void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error(what + " out of range [0,1]: " + std::to_string(p));
}

DimensionValue dimension_value(std::vector<PathParam> paths) {
    if (paths.empty()) throw std::invalid_argument("dimension has no redundant path");
    double outage_all = 1.0;
    for (const auto& p : paths) {
        check_probability(p.p_outage, "p_outage of " + p.path_id);
        outage_all *= p.p_outage;
    }
    DimensionValue dv;
    dv.live = 1.0 - outage_all;
    dv.paths = std::move(paths);
    return dv;
}

double to_outage(double live) {
    check_probability(live, "live probability");
    return 1.0 - live;
}

double to_live(double outage) {
    check_probability(outage, "outage probability");
    return 1.0 - outage;
}

IRD ird_of_model(const SystemModel& model) {
    auto violations = validate_model(model);
    if (!violations.empty()) {
        std::string msg = "model validation failed:";
        for (const auto& v : violations) msg += " [" + v.entity + ": " + v.rule + "]";
        throw std::invalid_argument(msg);
    }
    IRD ird;
    for (const auto& dim : model.dimensions) {
        std::vector<PathParam> pps;
        pps.reserve(dim.paths.size());
        for (const auto& path : dim.paths) {
            PathParam pp;
            pp.path_id = path.id;
            pp.p_outage = path.p_outage;
            for (const auto& [key, value] : coherence_keys(model, path)) {
                auto& slot = pp.params[key];
                if (!slot.empty()) slot += '|';
                slot += value;
            }
            pps.push_back(std::move(pp));
        }
        ird.dimensions.emplace(dim.name, dimension_value(std::move(pps)));
    }
    return ird;
}

ComparisonResult compare(const IRD& a, const IRD& b) {
    bool a_has_extra = false, b_has_extra = false;
    for (const auto& [name, dv] : a.dimensions) {
        (void)dv;
        if (!b.dimensions.count(name)) a_has_extra = true;
    }
    for (const auto& [name, dv] : b.dimensions) {
        (void)dv;
        if (!a.dimensions.count(name)) b_has_extra = true;
    }
    // Presence rules precede value comparison: the IRD lacking a dimension wins.
    if (a_has_extra && b_has_extra) return ComparisonResult::Incomparable;
    if (b_has_extra) return ComparisonResult::FirstHigher;
    if (a_has_extra) return ComparisonResult::SecondHigher;

    std::vector<double> la, lb;
    for (const auto& [name, dv] : a.dimensions) {
        (void)name;
        la.push_back(dv.live);
    }
    for (const auto& [name, dv] : b.dimensions) {
        (void)name;
        lb.push_back(dv.live);
    }
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    for (size_t i = 0; i < la.size(); ++i) {
        if (la[i] < lb[i]) return ComparisonResult::SecondHigher;
        if (la[i] > lb[i]) return ComparisonResult::FirstHigher;
    }
    return ComparisonResult::Equal;
}

std::pair<std::string, double> weakest_dimension(const IRD& ird) {
    if (ird.dimensions.empty()) throw std::invalid_argument("IRD has no dimensions");
    // std::map iterates in name order, so the first strict minimum is the
    // lexicographically smallest among ties.
    auto best = ird.dimensions.begin();
    for (auto it = std::next(best); it != ird.dimensions.end(); ++it)
        if (it->second.live < best->second.live) best = it;
    return {best->first, best->second.live};
}

}  // namespace ird
