#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frechet/applications.hpp"
#include "frechet/cpm.hpp"
#include "frechet/reduction.hpp"
#include "frechet/speed.hpp"

namespace frechet {

// Malformed input; the message names the offending field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InstanceKind { Curves, ClosedCurves, Curve, PointSet, Dag, Formula };
const char* kind_name(InstanceKind k);

struct InstanceDoc {
    InstanceKind kind = InstanceKind::Curves;
    Polyline P, Q;                       // Curve kind stores its curve in P
    std::optional<SpeedProfiles> speed;  // curves only
    std::vector<Point> S;                // pointset
    std::optional<double> eps;           // pointset, dag
    bool all_points = false;             // pointset
    GeometricDag dag;
    SatFormula formula;
};

InstanceDoc parse_instance(const std::string& text);
std::string write_instance(const InstanceDoc& doc);
InstanceDoc read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

SatFormula parse_dimacs(const std::string& text);
std::string write_dimacs(const SatFormula& phi);
// DIMACS when the text does not start with '{', the JSON formula kind otherwise.
SatFormula read_formula_file(const std::string& path);

InstanceDoc pointset_doc(const CpmInstance& inst);
CpmInstance cpm_instance(const InstanceDoc& doc);

}  // namespace frechet
