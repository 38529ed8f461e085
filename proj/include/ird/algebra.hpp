#pragma once

#include <map>
#include <string>
#include <vector>

#include "ird/model.hpp"

namespace ird {

struct PathParam {
    std::string path_id;
    double p_outage = 0.0;
    std::map<std::string, std::string> params;  // attribute key -> value
};

struct DimensionValue {
    double live = 1.0;  // outage form is always derived, never stored
    std::vector<PathParam> paths;
};

struct IRD {
    std::map<std::string, DimensionValue> dimensions;  // canonical names
};

enum class ComparisonResult { FirstHigher, SecondHigher, Equal, Incomparable };

std::string to_string(ComparisonResult r);

// live = 1 - prod(p_outage) over the paths. Errors on an empty path list.
DimensionValue dimension_value(std::vector<PathParam> paths);

double to_outage(double live);
double to_live(double outage);

// One DimensionValue per model dimension; path params carry the path's
// coherence-relevant attributes (multiple values for a key joined "|").
IRD ird_of_model(const SystemModel& model);

// Dimension-presence rules first (the IRD lacking a dimension ranks higher);
// equal name sets compare sorted live values ascending, first difference wins.
ComparisonResult compare(const IRD& a, const IRD& b);

// Minimal live value; ties broken by lexicographically smallest name.
std::pair<std::string, double> weakest_dimension(const IRD& ird);

}  // namespace ird
