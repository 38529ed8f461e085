#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ird/model.hpp"

namespace ird {

enum class FactorAxis { Space, Time, Layer, Dependence };
enum class FactorOrigin { Declared, Derived };
enum class RelationKind { Contains, DependsOn, TimeCoherent };

FactorAxis factor_axis_from_string(const std::string& s);
std::string to_string(FactorAxis a);
RelationKind relation_kind_from_string(const std::string& s);
std::string to_string(RelationKind k);

struct SinglenessFactor {
    std::string id;  // canonical
    std::string label;
    FactorAxis axis = FactorAxis::Space;
    FactorOrigin origin = FactorOrigin::Declared;
    std::optional<std::pair<std::string, RelationKind>> derived_from;
};

struct FactorRelation {
    RelationKind kind = RelationKind::Contains;
    std::string from;
    std::string to;
};

struct KnowledgeBase {
    std::string version;
    std::map<std::string, SinglenessFactor> factors;
    std::vector<FactorRelation> relations;
    std::map<std::string, std::string> key_bindings;  // factor id -> attribute key

    // Checks endpoints, self-loops, and that contains-edges form a DAG.
    void validate() const;
};

enum class CoverageStatus { Covered, Uncovered, Unknown };

std::string to_string(CoverageStatus s);

struct CoverageEntry {
    std::string factor_id;
    CoverageStatus status = CoverageStatus::Unknown;
    std::vector<std::vector<std::string>> evidence;  // path-id groups
};

struct CoverageReport {
    std::vector<CoverageEntry> entries;  // sorted by factor id
};

// Least fixpoint of `declared` under: contains traversed both up and down,
// depends_on forward, time_coherent both ways. Breadth-first, ties by id.
std::vector<SinglenessFactor> expand(const std::set<std::string>& declared,
                                     const KnowledgeBase& kb);

struct AuditOptions {
    double time_window_seconds = 86400.0;  // coherence window for time factors
};

CoverageReport audit(const SystemModel& model, const KnowledgeBase& kb,
                     const std::set<std::string>& declared, const AuditOptions& opts = {});

// The bundled hardware/software/communication independence checklist.
const KnowledgeBase& default_knowledge_base();

// Seconds since Unix epoch for an ISO-8601 date or datetime (UTC assumed).
// Returns nullopt on anything unparseable.
std::optional<double> parse_iso8601_seconds(const std::string& s);

}  // namespace ird
