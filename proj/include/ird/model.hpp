#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ird {

// Raised when an operation references an entity the model does not contain.
struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ComponentKind { Hardware, Software, Network, Power, Location, License, Other };

ComponentKind component_kind_from_string(const std::string& s);
std::string to_string(ComponentKind k);

struct ComponentRef {
    std::string id;
    ComponentKind kind = ComponentKind::Other;
    std::map<std::string, std::string> attributes;  // canonical keys
};

using CoherenceKey = std::pair<std::string, std::string>;  // (attribute key, value)

struct RedundancyPath {
    std::string id;
    std::vector<std::string> components;
    double p_outage = 0.0;
};

enum class DimensionScope { Space, Time, Layer, Dependence, Other };

DimensionScope dimension_scope_from_string(const std::string& s);
std::string to_string(DimensionScope s);

struct Dimension {
    std::string name;  // canonical
    std::string description;
    DimensionScope scope = DimensionScope::Other;
    std::vector<RedundancyPath> paths;
};

struct SystemModel {
    std::string name;
    std::vector<Dimension> dimensions;
    std::map<std::string, ComponentRef> components;
    std::map<std::string, std::string> metadata;

    const Dimension* find_dimension(const std::string& name) const;
    const RedundancyPath* find_path(const std::string& path_id) const;
};

struct Violation {
    std::string entity;
    std::string rule;
};

enum class Verdict { Independent, Coherent };

struct CoherenceReport {
    std::string path_a;
    std::string path_b;
    std::set<CoherenceKey> shared_keys;
    std::set<std::string> shared_components;
    Verdict verdict = Verdict::Independent;
};

// Empty result means every invariant holds. Violations are data, not failures.
std::vector<Violation> validate_model(const SystemModel& model);

// All (attribute key, value) pairs collected over a path's components.
std::set<CoherenceKey> coherence_keys(const SystemModel& model, const RedundancyPath& path);

// Structural independence: no shared component id, no shared coherence key.
// Symmetric in its path arguments.
CoherenceReport check_independence(const SystemModel& model, const std::string& path_a,
                                   const std::string& path_b);

// Partition of a dimension's paths by their value of `key`. Paths whose
// components lack the key each form a singleton group.
std::vector<std::vector<std::string>> coherence_groups(const SystemModel& model,
                                                       const std::string& dimension,
                                                       const std::string& key);

// The grouping label a path carries for `key`: the sorted "|"-joined set of
// values its components expose, or nullopt-like empty marker handled by caller.
// Returns false when no component carries the key.
bool path_key_value(const SystemModel& model, const RedundancyPath& path, const std::string& key,
                    std::string& out);

}  // namespace ird
