#include "ird/factors.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <stdexcept>

#include "ird/canonical.hpp"

namespace ird {

FactorAxis factor_axis_from_string(const std::string& s) {
    std::string c = canonicalize(s);
    if (c == "space") return FactorAxis::Space;
    if (c == "time") return FactorAxis::Time;
    if (c == "layer") return FactorAxis::Layer;
    if (c == "dependence") return FactorAxis::Dependence;
    throw std::invalid_argument("unknown factor axis: " + s);
}

std::string to_string(FactorAxis a) {
    switch (a) {
        case FactorAxis::Space: return "space";
        case FactorAxis::Time: return "time";
        case FactorAxis::Layer: return "layer";
        case FactorAxis::Dependence: return "dependence";
    }
    return "space";
}

RelationKind relation_kind_from_string(const std::string& s) {
    std::string c = canonicalize(s);
    if (c == "contains") return RelationKind::Contains;
    if (c == "depends_on") return RelationKind::DependsOn;
    if (c == "time_coherent") return RelationKind::TimeCoherent;
    throw std::invalid_argument("unknown relation kind: " + s);
}

std::string to_string(RelationKind k) {
    switch (k) {
        case RelationKind::Contains: return "contains";
        case RelationKind::DependsOn: return "depends_on";
        case RelationKind::TimeCoherent: return "time_coherent";
    }
    return "contains";
}

std::string to_string(CoverageStatus s) {
    switch (s) {
        case CoverageStatus::Covered: return "covered";
        case CoverageStatus::Uncovered: return "uncovered";
        case CoverageStatus::Unknown: return "unknown";
    }
    return "unknown";
}

void KnowledgeBase::validate() const {
    for (const auto& r : relations) {
        if (!factors.count(r.from))
            throw std::invalid_argument("relation endpoint not a known factor: " + r.from);
        if (!factors.count(r.to))
            throw std::invalid_argument("relation endpoint not a known factor: " + r.to);
        if (r.from == r.to)
            throw std::invalid_argument("relation self-loop on factor: " + r.from);
    }
    for (const auto& [fid, key] : key_bindings) {
        if (!factors.count(fid))
            throw std::invalid_argument("key binding for unknown factor: " + fid);
        if (canonicalize(key) != key)
            throw std::invalid_argument("key binding not canonical: " + key);
    }
    // Kahn's algorithm over contains-edges only.
    std::map<std::string, int> indeg;
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [id, f] : factors) {
        (void)f;
        indeg[id] = 0;
    }
    for (const auto& r : relations) {
        if (r.kind != RelationKind::Contains) continue;
        adj[r.from].push_back(r.to);
        ++indeg[r.to];
    }
    std::deque<std::string> q;
    for (const auto& [id, d] : indeg)
        if (d == 0) q.push_back(id);
    size_t seen = 0;
    while (!q.empty()) {
        std::string id = q.front();
        q.pop_front();
        ++seen;
        for (const auto& n : adj[id])
            if (--indeg[n] == 0) q.push_back(n);
    }
    if (seen != indeg.size())
        throw std::invalid_argument("contains relations form a cycle");
}

std::vector<SinglenessFactor> expand(const std::set<std::string>& declared,
                                     const KnowledgeBase& kb) {
    for (const auto& id : declared)
        if (!kb.factors.count(id)) throw LookupError("unknown factor id: " + id);

    // Neighbor map with the relation kind that justifies each hop.
    std::map<std::string, std::set<std::pair<std::string, RelationKind>>> neighbors;
    for (const auto& r : kb.relations) {
        switch (r.kind) {
            case RelationKind::Contains:  // scale small (down) and scale big (up)
                neighbors[r.from].emplace(r.to, r.kind);
                neighbors[r.to].emplace(r.from, r.kind);
                break;
            case RelationKind::DependsOn:
                neighbors[r.from].emplace(r.to, r.kind);
                break;
            case RelationKind::TimeCoherent:  // coherence is mutual
                neighbors[r.from].emplace(r.to, r.kind);
                neighbors[r.to].emplace(r.from, r.kind);
                break;
        }
    }

    std::vector<SinglenessFactor> out;
    std::set<std::string> visited;
    std::deque<std::string> frontier;
    for (const auto& id : declared) {  // std::set iterates sorted
        SinglenessFactor f = kb.factors.at(id);
        f.origin = FactorOrigin::Declared;
        f.derived_from.reset();
        out.push_back(std::move(f));
        visited.insert(id);
        frontier.push_back(id);
    }
    while (!frontier.empty()) {
        std::string id = frontier.front();
        frontier.pop_front();
        for (const auto& [next, kind] : neighbors[id]) {  // sorted by (id, kind)
            if (visited.count(next)) continue;
            visited.insert(next);
            SinglenessFactor f = kb.factors.at(next);
            f.origin = FactorOrigin::Derived;
            f.derived_from = {id, kind};
            out.push_back(std::move(f));
            frontier.push_back(next);
        }
    }
    return out;
}

std::optional<double> parse_iso8601_seconds(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    int n = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%lf%n", &y, &mo, &d, &h, &mi, &sec, &n) == 6) {
        // trailing "Z" allowed
    } else if (std::sscanf(s.c_str(), "%d-%d-%d%n", &y, &mo, &d, &n) == 3 &&
               n == static_cast<int>(s.size())) {
        h = mi = 0;
        sec = 0.0;
    } else {
        return std::nullopt;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
    // days from civil (Howard Hinnant's algorithm)
    int yy = y - (mo <= 2);
    int era = (yy >= 0 ? yy : yy - 399) / 400;
    unsigned yoe = static_cast<unsigned>(yy - era * 400);
    unsigned doy = (153u * (mo + (mo > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    long long days = static_cast<long long>(era) * 146097 + static_cast<long long>(doe) - 719468;
    return static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

CoverageReport audit(const SystemModel& model, const KnowledgeBase& kb,
                     const std::set<std::string>& declared, const AuditOptions& opts) {
    auto violations = validate_model(model);
    if (!violations.empty()) {
        std::string msg = "model validation failed:";
        for (const auto& v : violations) msg += " [" + v.entity + ": " + v.rule + "]";
        throw std::invalid_argument(msg);
    }

    std::vector<std::string> dim_names;
    for (const auto& d : model.dimensions) dim_names.push_back(d.name);
    std::sort(dim_names.begin(), dim_names.end());

    auto factors = expand(declared, kb);
    std::sort(factors.begin(), factors.end(),
              [](const SinglenessFactor& a, const SinglenessFactor& b) { return a.id < b.id; });

    CoverageReport report;
    for (const auto& f : factors) {
        CoverageEntry entry;
        entry.factor_id = f.id;
        auto kit = kb.key_bindings.find(f.id);
        if (kit == kb.key_bindings.end()) {
            entry.status = CoverageStatus::Unknown;
            report.entries.push_back(std::move(entry));
            continue;
        }
        const std::string& key = kit->second;
        entry.status = CoverageStatus::Uncovered;
        for (const auto& dname : dim_names) {
            auto groups = coherence_groups(model, dname, key);
            if (entry.evidence.empty()) entry.evidence = groups;
            if (groups.size() < 2) continue;
            if (f.axis == FactorAxis::Time) {
                // Need two paths whose bound expiry values differ by more than
                // the coherence window; equal or unparseable dates stay coherent.
                const Dimension* dim = model.find_dimension(dname);
                double lo = 0, hi = 0;
                bool any = false;
                for (const auto& p : dim->paths) {
                    std::string v;
                    if (!path_key_value(model, p, key, v)) continue;
                    auto t = parse_iso8601_seconds(v);
                    if (!t) continue;
                    if (!any) {
                        lo = hi = *t;
                        any = true;
                    } else {
                        lo = std::min(lo, *t);
                        hi = std::max(hi, *t);
                    }
                }
                if (!any || hi - lo <= opts.time_window_seconds) continue;
            }
            entry.status = CoverageStatus::Covered;
            entry.evidence = groups;
            break;
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

const KnowledgeBase& default_knowledge_base() {
    static const KnowledgeBase kb = [] {
        KnowledgeBase k;
        k.version = "1";
        auto add_factor = [&](const std::string& id, const std::string& label, FactorAxis axis,
                              const std::string& key) {
            SinglenessFactor f;
            f.id = id;
            f.label = label;
            f.axis = axis;
            k.factors.emplace(id, std::move(f));
            if (!key.empty()) k.key_bindings.emplace(id, key);
        };
        auto rel = [&](RelationKind kind, const std::string& from, const std::string& to) {
            k.relations.push_back({kind, from, to});
        };

        // Hardware independence chain.
        add_factor("computer", "single computing node", FactorAxis::Space, "host");
        add_factor("cpu", "identical CPU type across nodes", FactorAxis::Space, "cpu_arch");
        add_factor("memory", "identical memory type across nodes", FactorAxis::Space, "memory");
        add_factor("power-supply", "shared power supply line", FactorAxis::Dependence,
                   "power_line");
        add_factor("server", "nodes hosted on one server", FactorAxis::Space, "server");
        add_factor("lab", "all nodes in one laboratory", FactorAxis::Space, "lab");
        add_factor("city", "all nodes in one city", FactorAxis::Space, "city");
        add_factor("country", "all nodes in one country", FactorAxis::Space, "country");
        add_factor("hardware-expiry", "rented hardware expiring together", FactorAxis::Time,
                   "hardware_expiry");
        rel(RelationKind::Contains, "country", "city");
        rel(RelationKind::Contains, "city", "lab");
        rel(RelationKind::Contains, "lab", "computer");
        rel(RelationKind::Contains, "server", "computer");
        rel(RelationKind::Contains, "computer", "cpu");
        rel(RelationKind::Contains, "computer", "memory");
        rel(RelationKind::DependsOn, "computer", "power-supply");
        rel(RelationKind::TimeCoherent, "computer", "hardware-expiry");

        // Software independence chain.
        add_factor("software", "single software solution", FactorAxis::Layer, "software");
        add_factor("vendor", "software from one company", FactorAxis::Space, "manufacturer");
        add_factor("library", "shared library", FactorAxis::Dependence, "library");
        add_factor("runtime", "shared runtime virtual machine", FactorAxis::Dependence, "runtime");
        add_factor("os", "shared operating system", FactorAxis::Dependence, "os");
        add_factor("license-expiry", "software licenses expiring together", FactorAxis::Time,
                   "license_expiry");
        rel(RelationKind::DependsOn, "software", "vendor");
        rel(RelationKind::DependsOn, "software", "library");
        rel(RelationKind::DependsOn, "software", "runtime");
        rel(RelationKind::DependsOn, "software", "os");
        rel(RelationKind::TimeCoherent, "software", "license-expiry");

        // Communication independence chain.
        add_factor("network", "single communication network", FactorAxis::Layer, "network");
        add_factor("router", "single outgoing router", FactorAxis::Dependence, "router");
        add_factor("carrier", "single network carrier", FactorAxis::Space, "carrier");
        add_factor("network-type", "single network type", FactorAxis::Space, "network_type");
        add_factor("bandwidth-expiry", "bandwidth purchases expiring together", FactorAxis::Time,
                   "bandwidth_expiry");
        rel(RelationKind::DependsOn, "network", "router");
        rel(RelationKind::DependsOn, "network", "carrier");
        rel(RelationKind::DependsOn, "network", "network-type");
        rel(RelationKind::TimeCoherent, "network", "bandwidth-expiry");

        k.validate();
        return k;
    }();
    return kb;
}

}  // namespace ird
