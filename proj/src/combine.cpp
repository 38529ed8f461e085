#include "ird/combine.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ird {

static double dedupe_live(const std::string& key, const std::vector<PathParam>& paths) {
    // Comonotone coupling within a shared key value: the group fails together
    // with probability min of member marginals.
    std::map<std::string, double> group_min;
    double product = 1.0;
    for (const auto& p : paths) {
        auto it = p.params.find(key);
        if (it == p.params.end()) {
            product *= p.p_outage;  // no key value: its own group
            continue;
        }
        auto [slot, inserted] = group_min.emplace(it->second, p.p_outage);
        if (!inserted) slot->second = std::min(slot->second, p.p_outage);
    }
    for (const auto& [v, m] : group_min) {
        (void)v;
        product *= m;
    }
    return 1.0 - product;
}

DimensionValue evaluate_dimension(const CombinationFunction& cf, std::vector<PathParam> paths) {
    if (paths.empty()) throw std::invalid_argument("dimension has no redundant path");
    switch (cf.kind) {
        case CfKind::Independent:
            return dimension_value(std::move(paths));
        case CfKind::DedupeByKey: {
            if (cf.key.empty())
                throw std::invalid_argument("dedupe_by_key combination function requires a key");
            for (const auto& p : paths)
                if (!(p.p_outage >= 0.0 && p.p_outage <= 1.0))
                    throw std::domain_error("p_outage of " + p.path_id + " out of range");
            DimensionValue dv;
            dv.live = dedupe_live(cf.key, paths);
            dv.paths = std::move(paths);
            return dv;
        }
    }
    throw std::logic_error("unreachable combination kind");
}

DimensionValue combine_dimension(const CombinationFunction& cf, const DimensionValue& a,
                                 const DimensionValue& b) {
    if (a.paths.empty() || b.paths.empty())
        throw std::invalid_argument("combine operand has no redundant path");
    std::vector<PathParam> merged = a.paths;
    std::set<std::string> seen;
    for (const auto& p : merged) seen.insert(p.path_id);
    for (const auto& p : b.paths)
        if (seen.insert(p.path_id).second) merged.push_back(p);
    return evaluate_dimension(cf, std::move(merged));
}

IRD add(const IRD& a, const IRD& b, const CfAssignment& assignment) {
    IRD out = a;
    for (const auto& [name, dv] : b.dimensions) {
        auto it = out.dimensions.find(name);
        if (it == out.dimensions.end()) {
            out.dimensions.emplace(name, dv);
        } else {
            it->second = combine_dimension(assignment.for_dimension(name), it->second, dv);
        }
    }
    return out;
}

IRD subtract(const IRD& ird, const std::vector<std::pair<std::string, std::string>>& removal,
             const CfAssignment& assignment) {
    IRD out = ird;
    std::set<std::string> affected;
    for (const auto& [dim, path_id] : removal) {
        auto it = out.dimensions.find(dim);
        if (it == out.dimensions.end())
            throw LookupError("unknown dimension: " + dim);
        auto& paths = it->second.paths;
        auto pit = std::find_if(paths.begin(), paths.end(),
                                [&](const PathParam& p) { return p.path_id == path_id; });
        if (pit == paths.end())
            throw LookupError("unknown path id in dimension " + dim + ": " + path_id);
        paths.erase(pit);
        affected.insert(dim);
    }
    for (const auto& dim : affected) {
        auto it = out.dimensions.find(dim);
        if (it->second.paths.empty()) {
            out.dimensions.erase(it);
        } else {
            it->second =
                evaluate_dimension(assignment.for_dimension(dim), std::move(it->second.paths));
        }
    }
    return out;
}

}  // namespace ird
