#pragma once

#include <functional>
#include <vector>

#include "frechet/geometry.hpp"
#include "frechet/speed.hpp"

namespace frechet {

// Feasibility samples over the parameter rectangle at r samples per unit.
struct SampledFreeSpace {
    int r = 0, w = 0, h = 0;
    std::vector<char> ok;
    SampledFreeSpace(const Polyline& P, const Polyline& Q, double eps, int r);
    bool at(int a, int b) const { return ok[static_cast<std::size_t>(a) * h + b] != 0; }
};

bool grid_bfs_decide(const Polyline& P, const Polyline& Q, double eps, int r, bool monotone);

// Grid points of row m reachable by monotone sampled paths from (x0, 0), x0 = a0 / r.
std::vector<char> grid_reach_from(const SampledFreeSpace& fs, int a0);

// Cell-by-cell monotone reachability from a start set on row i (absolute x per
// cell), returned for every row i..m. Row i itself is closed under rightward moves.
std::vector<std::vector<OptInterval>> cell_reach_rows(const FreeSpace& fs, int i, std::vector<OptInterval> start);

enum class SlopeSlack { Exact, Loose, Tight };

// Slope-constrained DP between sampled boundary points of every cell.
bool slope_grid_decide(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof, double eps, int r,
                       SlopeSlack slack = SlopeSlack::Exact);

// Calls visit for every vertex sequence over S of length 1..max_len; a false
// return from extend prunes all continuations of that prefix.
void enumerate_pointset_curves(const std::vector<Point>& S, int max_len,
                               const std::function<bool(const std::vector<int>&)>& extend,
                               const std::function<void(const std::vector<int>&)>& visit, bool all_points = false);

}  // namespace frechet
