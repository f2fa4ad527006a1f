#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

struct SvgOptions {
    int cell_px = 48;
    int resolution = 32;               // boundary samples per cell polygon side
    bool reachable = true;             // bold strokes on reachable boundary parts
    std::optional<double> query;       // start x on row 0; draws its (lp, rp) pointers on row m
};

// Feasible region of one cell (local coordinates, counter-clockwise), empty when the cell is blocked.
std::vector<std::pair<double, double>> cell_free_polygon(const Point& p0, const Point& p1, const Point& q0,
                                                         const Point& q1, double eps, int resolution);

// Diagram drawn in a group whose user units are diagram units (x along P, y along Q).
std::string render_free_space_svg(const Polyline& P, const Polyline& Q, double eps, const SvgOptions& opt = {});

constexpr long kSvgMaxCells = 10000;

}  // namespace frechet
