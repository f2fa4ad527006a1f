#pragma once

#include <optional>
#include <vector>

#include "frechet/classic.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

// Curve P, pointset S and radius eps. Cylinder i is the eps-neighbourhood of P_i.
struct CpmInstance {
    std::vector<Point> S;
    Polyline P;
    double eps = 0.0;
    bool all_points = false;  // verify semantics only
    int k() const { return static_cast<int>(S.size()); }
    int n() const { return static_cast<int>(P.segments()); }
    // P_i[v] in absolute diagram coordinates
    OptInterval part(int i, int v) const;
    bool in_cylinder(int i, int v) const { return part(i, v).has_value(); }
};

void validate(const CpmInstance& inst);

// Furthest cylinder reachable along u->v when u is matched at Left(P_i[u]); absent when infeasible.
std::vector<std::optional<int>> reach_pointers(const Point& u, const Point& v, const CpmInstance& inst);

struct ReachState {
    enum Via { None, Start, Strip, Hop };
    struct Back {
        Via via = None;
        int cyl = -1, from = -1;
    };
    int n = 0, k = 0;
    // earliest matched position of a curve ending at v, per cylinder
    std::vector<std::vector<std::optional<double>>> pos;
    std::vector<std::vector<Back>> back;
    int accept = -1;  // accepting point in the last cylinder
    bool reachable(int i, int v) const { return pos[i][v].has_value(); }
};

ReachState cpm_reach(const CpmInstance& inst);
bool cpm_decide(const CpmInstance& inst);
std::optional<std::vector<int>> cpm_reconstruct_indices(const CpmInstance& inst);
std::optional<Polyline> cpm_reconstruct(const CpmInstance& inst);

std::vector<CriticalValue> cpm_critical_values(const std::vector<Point>& S, const Polyline& P);
Optimum cpm_optimize(const std::vector<Point>& S, const Polyline& P);

}  // namespace frechet
