#include "ird/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ird/canonical.hpp"
#include "json.hpp"

using nlohmann::json;

namespace ird {

namespace {

// nlohmann reports a byte offset; golden-file consumers want line/column.
std::pair<size_t, size_t> line_col(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream msg;
        msg << "JSON parse error at line " << line << ", column " << col << ": " << e.what();
        throw ParseError(msg.str());
    }
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw ParseError("unknown field \"" + it.key() + "\" in " + where);
    }
}

const json& require(const json& obj, const char* field, const std::string& where) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw ParseError("missing field \"" + std::string(field) + "\" in " + where);
    return *it;
}

double as_probability(const json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + " must be a number");
    return v.get<double>();
}

std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    return buf;
}

CombinationFunction cf_from(const json& obj, const std::string& where) {
    reject_unknown_fields(obj, {"name", "key"}, where);
    std::string name = require(obj, "name", where).get<std::string>();
    CombinationFunction cf;
    if (name == "independent") {
        cf.kind = CfKind::Independent;
    } else if (name == "dedupe_by_key") {
        cf.kind = CfKind::DedupeByKey;
        cf.key = canonicalize(require(obj, "key", where).get<std::string>());
    } else {
        throw ParseError("unknown combination function \"" + name + "\" in " + where);
    }
    return cf;
}

json cf_to(const CombinationFunction& cf) {
    json j;
    j["name"] = cf.kind == CfKind::Independent ? "independent" : "dedupe_by_key";
    if (cf.kind == CfKind::DedupeByKey) j["key"] = cf.key;
    return j;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

SystemModel model_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("model document must be a JSON object");
    reject_unknown_fields(j, {"name", "components", "dimensions", "metadata"}, "model");

    SystemModel model;
    model.name = require(j, "name", "model").get<std::string>();
    for (const auto& cj : require(j, "components", "model")) {
        reject_unknown_fields(cj, {"id", "kind", "attributes"}, "component");
        ComponentRef c;
        c.id = require(cj, "id", "component").get<std::string>();
        c.kind = component_kind_from_string(require(cj, "kind", "component").get<std::string>());
        if (cj.contains("attributes"))
            for (auto it = cj["attributes"].begin(); it != cj["attributes"].end(); ++it)
                c.attributes[canonicalize(it.key())] = it.value().get<std::string>();
        std::string id = c.id;
        model.components.emplace(std::move(id), std::move(c));
    }
    for (const auto& dj : require(j, "dimensions", "model")) {
        reject_unknown_fields(dj, {"name", "scope", "description", "paths"}, "dimension");
        Dimension d;
        d.name = canonicalize(require(dj, "name", "dimension").get<std::string>());
        if (dj.contains("scope"))
            d.scope = dimension_scope_from_string(dj["scope"].get<std::string>());
        if (dj.contains("description")) d.description = dj["description"].get<std::string>();
        for (const auto& pj : require(dj, "paths", "dimension " + d.name)) {
            reject_unknown_fields(pj, {"id", "components", "p_outage"}, "path");
            RedundancyPath p;
            p.id = require(pj, "id", "path").get<std::string>();
            for (const auto& cid : require(pj, "components", "path " + p.id))
                p.components.push_back(cid.get<std::string>());
            p.p_outage = as_probability(require(pj, "p_outage", "path " + p.id),
                                        "p_outage of path " + p.id);
            d.paths.push_back(std::move(p));
        }
        model.dimensions.push_back(std::move(d));
    }
    if (j.contains("metadata"))
        for (auto it = j["metadata"].begin(); it != j["metadata"].end(); ++it)
            model.metadata[it.key()] = it.value().get<std::string>();
    return model;
}

IRD ird_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("IRD document must be a JSON object");
    reject_unknown_fields(j, {"dimensions"}, "IRD");
    IRD ird;
    for (const auto& dj : require(j, "dimensions", "IRD")) {
        reject_unknown_fields(dj, {"name", "live", "paths"}, "IRD dimension");
        std::string name = canonicalize(require(dj, "name", "IRD dimension").get<std::string>());
        DimensionValue dv;
        dv.live = as_probability(require(dj, "live", "IRD dimension " + name),
                                 "live of dimension " + name);
        if (!(dv.live >= 0.0 && dv.live <= 1.0))
            throw ParseError("live of dimension " + name + " out of range [0,1]");
        for (const auto& pj : require(dj, "paths", "IRD dimension " + name)) {
            reject_unknown_fields(pj, {"path_id", "p_outage", "params"}, "IRD path");
            PathParam p;
            p.path_id = require(pj, "path_id", "IRD path").get<std::string>();
            p.p_outage = as_probability(require(pj, "p_outage", "IRD path " + p.path_id),
                                        "p_outage of path " + p.path_id);
            if (!(p.p_outage >= 0.0 && p.p_outage <= 1.0))
                throw ParseError("p_outage of path " + p.path_id + " out of range [0,1]");
            if (pj.contains("params"))
                for (auto it = pj["params"].begin(); it != pj["params"].end(); ++it)
                    p.params[canonicalize(it.key())] = it.value().get<std::string>();
            dv.paths.push_back(std::move(p));
        }
        if (ird.dimensions.count(name))
            throw ParseError("duplicate dimension name in IRD: " + name);
        ird.dimensions.emplace(std::move(name), std::move(dv));
    }
    return ird;
}

std::string ird_to_json(const IRD& ird) {
    // Hand-rendered so probabilities keep full round-trip precision and the
    // layout stays byte-stable for golden files.
    std::ostringstream out;
    out << "{\n  \"dimensions\": [";
    bool first_dim = true;
    for (const auto& [name, dv] : ird.dimensions) {  // std::map: sorted by name
        out << (first_dim ? "\n" : ",\n");
        first_dim = false;
        out << "    {\n      \"name\": " << json(name).dump()
            << ",\n      \"live\": " << format_probability(dv.live) << ",\n      \"paths\": [";
        std::vector<const PathParam*> paths;
        for (const auto& p : dv.paths) paths.push_back(&p);
        std::sort(paths.begin(), paths.end(),
                  [](const PathParam* a, const PathParam* b) { return a->path_id < b->path_id; });
        bool first_path = true;
        for (const PathParam* p : paths) {
            out << (first_path ? "\n" : ",\n");
            first_path = false;
            out << "        {\"path_id\": " << json(p->path_id).dump()
                << ", \"p_outage\": " << format_probability(p->p_outage)
                << ", \"params\": " << json(p->params).dump() << "}";
        }
        out << (first_path ? "]" : "\n      ]") << "\n    }";
    }
    out << (first_dim ? "]" : "\n  ]") << "\n}\n";
    return out.str();
}

CfAssignment cf_assignment_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("cf assignment document must be a JSON object");
    reject_unknown_fields(j, {"default", "per_dimension"}, "cf assignment");
    CfAssignment a;
    a.default_cf = cf_from(require(j, "default", "cf assignment"), "default cf");
    if (j.contains("per_dimension"))
        for (auto it = j["per_dimension"].begin(); it != j["per_dimension"].end(); ++it)
            a.per_dimension[canonicalize(it.key())] = cf_from(it.value(), "cf for " + it.key());
    return a;
}

KnowledgeBase kb_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("knowledge base document must be a JSON object");
    reject_unknown_fields(j, {"version", "factors", "relations", "key_bindings"},
                          "knowledge base");
    KnowledgeBase kb;
    if (j.contains("version")) kb.version = j["version"].get<std::string>();
    for (const auto& fj : require(j, "factors", "knowledge base")) {
        reject_unknown_fields(fj, {"id", "label", "axis"}, "factor");
        SinglenessFactor f;
        f.id = canonicalize(require(fj, "id", "factor").get<std::string>());
        if (fj.contains("label")) f.label = fj["label"].get<std::string>();
        f.axis = factor_axis_from_string(require(fj, "axis", "factor " + f.id).get<std::string>());
        std::string id = f.id;
        kb.factors.emplace(std::move(id), std::move(f));
    }
    for (const auto& rj : require(j, "relations", "knowledge base")) {
        reject_unknown_fields(rj, {"kind", "from", "to"}, "relation");
        FactorRelation r;
        r.kind = relation_kind_from_string(require(rj, "kind", "relation").get<std::string>());
        r.from = canonicalize(require(rj, "from", "relation").get<std::string>());
        r.to = canonicalize(require(rj, "to", "relation").get<std::string>());
        kb.relations.push_back(std::move(r));
    }
    if (j.contains("key_bindings"))
        for (auto it = j["key_bindings"].begin(); it != j["key_bindings"].end(); ++it)
            kb.key_bindings[canonicalize(it.key())] = canonicalize(it.value().get<std::string>());
    kb.validate();
    return kb;
}

std::string kb_to_json(const KnowledgeBase& kb) {
    json j;
    j["version"] = kb.version;
    j["factors"] = json::array();
    for (const auto& [id, f] : kb.factors)
        j["factors"].push_back({{"id", id}, {"label", f.label}, {"axis", to_string(f.axis)}});
    j["relations"] = json::array();
    for (const auto& r : kb.relations)
        j["relations"].push_back({{"kind", to_string(r.kind)}, {"from", r.from}, {"to", r.to}});
    j["key_bindings"] = kb.key_bindings;
    return j.dump(2) + "\n";
}

std::string coverage_to_json(const CoverageReport& report,
                             const std::vector<SinglenessFactor>& expansion) {
    json j;
    j["expansion"] = json::array();
    for (const auto& f : expansion) {
        json fj = {{"id", f.id},
                   {"axis", to_string(f.axis)},
                   {"origin", f.origin == FactorOrigin::Declared ? "declared" : "derived"}};
        if (f.derived_from)
            fj["derived_from"] = {{"factor", f.derived_from->first},
                                  {"relation", to_string(f.derived_from->second)}};
        j["expansion"].push_back(std::move(fj));
    }
    j["coverage"] = json::array();
    for (const auto& e : report.entries)
        j["coverage"].push_back(
            {{"factor", e.factor_id}, {"status", to_string(e.status)}, {"evidence", e.evidence}});
    return j.dump(2) + "\n";
}

std::string coverage_to_table(const CoverageReport& report) {
    std::ostringstream out;
    for (const auto& e : report.entries) {
        out << e.factor_id << "\t" << to_string(e.status) << "\t";
        bool first = true;
        for (const auto& g : e.evidence) {
            if (!first) out << " ";
            first = false;
            out << "{";
            for (size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << g[i];
            out << "}";
        }
        out << "\n";
    }
    return out.str();
}

bool is_weakness_scenario(const std::string& text) {
    json j = parse(text);
    return j.is_object() && j.contains("irds");
}

LayeredScenario layered_scenario_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("scenario document must be a JSON object");
    reject_unknown_fields(j, {"dimensions", "cases", "rounds", "jitter_width"},
                          "layered scenario");
    LayeredScenario s;
    for (const auto& dj : require(j, "dimensions", "layered scenario")) {
        reject_unknown_fields(dj, {"name", "cause_groups"}, "scenario dimension");
        ScenarioDimension d;
        d.name = require(dj, "name", "scenario dimension").get<std::string>();
        for (const auto& gj : require(dj, "cause_groups", "dimension " + d.name)) {
            reject_unknown_fields(gj, {"group_id", "unit_count", "p_unit", "rule"}, "cause group");
            CauseGroup g;
            g.group_id = require(gj, "group_id", "cause group").get<std::string>();
            g.unit_count = require(gj, "unit_count", "group " + g.group_id).get<std::uint32_t>();
            g.p_unit = as_probability(require(gj, "p_unit", "group " + g.group_id),
                                      "p_unit of group " + g.group_id);
            if (gj.contains("rule") && gj["rule"].get<std::string>() != "all_units")
                throw ParseError("unsupported rule in group " + g.group_id);
            d.cause_groups.push_back(std::move(g));
        }
        s.dimensions.push_back(std::move(d));
    }
    for (const auto& cj : require(j, "cases", "layered scenario")) {
        reject_unknown_fields(cj, {"case_id", "dimensions"}, "case");
        ScenarioCase c;
        c.case_id = require(cj, "case_id", "case").get<std::string>();
        for (const auto& dn : require(cj, "dimensions", "case " + c.case_id))
            c.dimensions.push_back(dn.get<std::string>());
        s.cases.push_back(std::move(c));
    }
    s.rounds = require(j, "rounds", "layered scenario").get<std::uint64_t>();
    if (j.contains("jitter_width")) s.jitter_width = j["jitter_width"].get<double>();
    s.validate();
    return s;
}

WeaknessScenario weakness_scenario_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("scenario document must be a JSON object");
    reject_unknown_fields(j, {"irds", "trials", "max_rounds_per_trial"}, "weakness scenario");
    WeaknessScenario s;
    for (const auto& wj : require(j, "irds", "weakness scenario")) {
        reject_unknown_fields(wj, {"name", "outages"}, "weakness IRD");
        WeaknessIrd w;
        w.name = require(wj, "name", "weakness IRD").get<std::string>();
        for (auto it = require(wj, "outages", "IRD " + w.name).begin();
             it != wj["outages"].end(); ++it)
            w.outages[it.key()] = as_probability(it.value(), "outage of " + it.key());
        s.irds.push_back(std::move(w));
    }
    s.trials = require(j, "trials", "weakness scenario").get<std::uint64_t>();
    if (j.contains("max_rounds_per_trial"))
        s.max_rounds_per_trial = j["max_rounds_per_trial"].get<std::uint64_t>();
    s.validate();
    return s;
}

std::vector<std::pair<std::string, std::string>> removals_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("removal document must be a JSON object");
    reject_unknown_fields(j, {"removals"}, "removal document");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& rj : require(j, "removals", "removal document")) {
        reject_unknown_fields(rj, {"dimension", "path_id"}, "removal");
        out.emplace_back(canonicalize(require(rj, "dimension", "removal").get<std::string>()),
                         require(rj, "path_id", "removal").get<std::string>());
    }
    return out;
}

}  // namespace ird
