#include "ird/model.hpp"

#include <algorithm>

#include "ird/canonical.hpp"

namespace ird {

ComponentKind component_kind_from_string(const std::string& s) {
    std::string c = canonicalize(s);
    if (c == "hardware") return ComponentKind::Hardware;
    if (c == "software") return ComponentKind::Software;
    if (c == "network") return ComponentKind::Network;
    if (c == "power") return ComponentKind::Power;
    if (c == "location") return ComponentKind::Location;
    if (c == "license") return ComponentKind::License;
    if (c == "other") return ComponentKind::Other;
    throw std::invalid_argument("unknown component kind: " + s);
}

std::string to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::Hardware: return "hardware";
        case ComponentKind::Software: return "software";
        case ComponentKind::Network: return "network";
        case ComponentKind::Power: return "power";
        case ComponentKind::Location: return "location";
        case ComponentKind::License: return "license";
        case ComponentKind::Other: return "other";
    }
    return "other";
}

DimensionScope dimension_scope_from_string(const std::string& s) {
    std::string c = canonicalize(s);
    if (c == "space") return DimensionScope::Space;
    if (c == "time") return DimensionScope::Time;
    if (c == "layer") return DimensionScope::Layer;
    if (c == "dependence") return DimensionScope::Dependence;
    if (c == "other") return DimensionScope::Other;
    throw std::invalid_argument("unknown dimension scope: " + s);
}

std::string to_string(DimensionScope s) {
    switch (s) {
        case DimensionScope::Space: return "space";
        case DimensionScope::Time: return "time";
        case DimensionScope::Layer: return "layer";
        case DimensionScope::Dependence: return "dependence";
        case DimensionScope::Other: return "other";
    }
    return "other";
}

const Dimension* SystemModel::find_dimension(const std::string& name) const {
    for (const auto& d : dimensions)
        if (d.name == name) return &d;
    return nullptr;
}

const RedundancyPath* SystemModel::find_path(const std::string& path_id) const {
    for (const auto& d : dimensions)
        for (const auto& p : d.paths)
            if (p.id == path_id) return &p;
    return nullptr;
}

std::vector<Violation> validate_model(const SystemModel& model) {
    std::vector<Violation> out;

    for (const auto& [id, comp] : model.components) {
        if (id.empty()) out.push_back({"<component>", "component id empty"});
        if (comp.id != id) out.push_back({id, "component map key does not match component id"});
        for (const auto& [k, v] : comp.attributes) {
            (void)v;
            if (canonicalize(k) != k)
                out.push_back({id, "attribute key not canonical: \"" + k + "\""});
        }
    }

    std::set<std::string> dim_names;
    std::set<std::string> path_ids;
    for (const auto& dim : model.dimensions) {
        if (dim.name.empty()) out.push_back({"<dimension>", "dimension name empty"});
        if (canonicalize(dim.name) != dim.name)
            out.push_back({dim.name, "dimension name not canonical"});
        if (!dim_names.insert(dim.name).second)
            out.push_back({dim.name, "duplicate dimension name"});
        if (dim.paths.empty()) out.push_back({dim.name, "dimension has no redundant path"});
        for (const auto& p : dim.paths) {
            if (p.id.empty()) out.push_back({dim.name, "path id empty"});
            if (!path_ids.insert(p.id).second) out.push_back({p.id, "duplicate path id"});
            if (!(p.p_outage >= 0.0 && p.p_outage <= 1.0))
                out.push_back({p.id, "probability out of range"});
            if (p.components.empty()) out.push_back({p.id, "path has no components"});
            for (const auto& c : p.components)
                if (!model.components.count(c))
                    out.push_back({p.id, "unknown component id: " + c});
        }
    }
    return out;
}

std::set<CoherenceKey> coherence_keys(const SystemModel& model, const RedundancyPath& path) {
    std::set<CoherenceKey> keys;
    for (const auto& cid : path.components) {
        auto it = model.components.find(cid);
        if (it == model.components.end()) continue;
        for (const auto& [k, v] : it->second.attributes) keys.emplace(k, v);
    }
    return keys;
}

CoherenceReport check_independence(const SystemModel& model, const std::string& path_a,
                                   const std::string& path_b) {
    const RedundancyPath* a = model.find_path(path_a);
    const RedundancyPath* b = model.find_path(path_b);
    if (!a) throw LookupError("unknown path id: " + path_a);
    if (!b) throw LookupError("unknown path id: " + path_b);

    CoherenceReport rep;
    rep.path_a = std::min(path_a, path_b);
    rep.path_b = std::max(path_a, path_b);

    std::set<std::string> ca(a->components.begin(), a->components.end());
    std::set<std::string> cb(b->components.begin(), b->components.end());
    std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                          std::inserter(rep.shared_components, rep.shared_components.begin()));

    auto ka = coherence_keys(model, *a);
    auto kb = coherence_keys(model, *b);
    std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(),
                          std::inserter(rep.shared_keys, rep.shared_keys.begin()));

    rep.verdict = (rep.shared_keys.empty() && rep.shared_components.empty())
                      ? Verdict::Independent
                      : Verdict::Coherent;
    return rep;
}

bool path_key_value(const SystemModel& model, const RedundancyPath& path, const std::string& key,
                    std::string& out) {
    std::set<std::string> values;
    for (const auto& cid : path.components) {
        auto it = model.components.find(cid);
        if (it == model.components.end()) continue;
        auto a = it->second.attributes.find(key);
        if (a != it->second.attributes.end()) values.insert(a->second);
    }
    if (values.empty()) return false;
    out.clear();
    for (const auto& v : values) {
        if (!out.empty()) out += '|';
        out += v;
    }
    return true;
}

std::vector<std::vector<std::string>> coherence_groups(const SystemModel& model,
                                                       const std::string& dimension,
                                                       const std::string& key) {
    const Dimension* dim = model.find_dimension(dimension);
    if (!dim) throw LookupError("unknown dimension: " + dimension);

    std::map<std::string, std::vector<std::string>> by_value;
    std::vector<std::vector<std::string>> groups;
    for (const auto& p : dim->paths) {
        std::string v;
        if (path_key_value(model, p, key, v)) {
            by_value[v].push_back(p.id);
        } else {
            groups.push_back({p.id});  // missing key: singleton group
        }
    }
    for (auto& [v, ids] : by_value) groups.push_back(std::move(ids));
    std::sort(groups.begin(), groups.end());
    return groups;
}

}  // namespace ird
