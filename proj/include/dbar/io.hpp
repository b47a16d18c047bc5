#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "dbar/multicauchy.hpp"

namespace dbar {

using json = nlohmann::json;

/// A solve request read from JSON.
struct ProblemSpec {
    ProductDomain domain;
    OneForm form;
    EvalPath mode = EvalPath::Exact;
    int grid = 16;
    int quad = 96;
    std::optional<double> boundary_margin;
    json tolerances = json::object();
};

/// Throws SpecError; syntax errors carry "line L, column C".
ProblemSpec parse_problem(const std::string& text);
ProblemSpec load_problem(const std::string& path);
json problem_to_json(const ProblemSpec& spec);

json domain_to_json(const ProductDomain& dom);
ProductDomain domain_from_json(const json& j);
json poly_to_json(const MultiIndexPoly& p);
MultiIndexPoly poly_from_json(int n, const json& j);

/// %.17g in the C locale; non-finite values print as nan/inf/-inf.
std::string format_double(double x);

/// JSON text with every float printed to 17 significant digits and non-finite
/// floats as null. Object keys keep nlohmann's sorted order.
std::string dump_json(const json& j, int indent = 2);

/// Header re_z1,im_z1,...,re_u,im_u then one row per grid point in flat order.
/// Rows with a NaN value (excluded points) are skipped.
void write_field_csv(std::ostream& os, const GridField& field);

/// Reads the whole file; throws SpecError if it cannot be opened.
std::string read_file(const std::string& path);
/// Writes text exactly, LF endings preserved.
void write_file(const std::string& path, const std::string& text);

}  // namespace dbar
