#pragma once

#include <map>
#include <string>
#include <vector>

#include "ird/algebra.hpp"

namespace ird {

enum class CfKind { Independent, DedupeByKey };

struct CombinationFunction {
    CfKind kind = CfKind::Independent;
    std::string key;  // required iff DedupeByKey, canonical

    static CombinationFunction independent() { return {CfKind::Independent, {}}; }
    static CombinationFunction dedupe_by_key(std::string key) {
        return {CfKind::DedupeByKey, std::move(key)};
    }
};

struct CfAssignment {
    CombinationFunction default_cf = CombinationFunction::independent();
    std::map<std::string, CombinationFunction> per_dimension;

    const CombinationFunction& for_dimension(const std::string& name) const {
        auto it = per_dimension.find(name);
        return it == per_dimension.end() ? default_cf : it->second;
    }
};

// Merge two dimension values under a combination function. The merged path
// list is the concatenation with path-id dedup.
//   independent:       live = 1 - prod(p_outage) over deduplicated paths
//   dedupe_by_key(k):  partition paths by params[k] (missing k: singleton);
//                      each group fails together with probability equal to the
//                      minimum member p_outage; live = 1 - prod of group minima
DimensionValue combine_dimension(const CombinationFunction& cf, const DimensionValue& a,
                                 const DimensionValue& b);

// Recompute a dimension's value from a given path list under a cf.
DimensionValue evaluate_dimension(const CombinationFunction& cf, std::vector<PathParam> paths);

// Union of dimension sets; shared dimensions merged via combine_dimension,
// one-sided dimensions copied verbatim.
IRD add(const IRD& a, const IRD& b, const CfAssignment& assignment);

// Remove the listed (dimension, path_id) entries and recompute each affected
// dimension under its assigned cf. A dimension losing its last path is dropped.
IRD subtract(const IRD& ird, const std::vector<std::pair<std::string, std::string>>& removal,
             const CfAssignment& assignment);

}  // namespace ird
