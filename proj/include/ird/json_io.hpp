#pragma once

#include <stdexcept>
#include <string>

#include "ird/combine.hpp"
#include "ird/factors.hpp"
#include "ird/model.hpp"
#include "ird/sim.hpp"

namespace ird {

// Malformed input document (JSON syntax or schema). Message carries
// line/column for syntax errors.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

SystemModel model_from_json(const std::string& text);

IRD ird_from_json(const std::string& text);
// Canonical form: dimensions sorted by name, paths by id, probabilities at
// full round-trip precision.
std::string ird_to_json(const IRD& ird);

CfAssignment cf_assignment_from_json(const std::string& text);

KnowledgeBase kb_from_json(const std::string& text);
std::string kb_to_json(const KnowledgeBase& kb);

std::string coverage_to_json(const CoverageReport& report,
                             const std::vector<SinglenessFactor>& expansion);
std::string coverage_to_table(const CoverageReport& report);

bool is_weakness_scenario(const std::string& text);
LayeredScenario layered_scenario_from_json(const std::string& text);
WeaknessScenario weakness_scenario_from_json(const std::string& text);

std::vector<std::pair<std::string, std::string>> removals_from_json(const std::string& text);

}  // namespace ird
