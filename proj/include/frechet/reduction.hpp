#pragma once

#include <array>
#include <optional>
#include <vector>

#include "frechet/cpm.hpp"

namespace frechet {

struct Literal {
    int var = 0;  // 0-based
    bool negated = false;
};

struct SatFormula {
    int vars = 0;
    std::vector<std::array<Literal, 3>> clauses;
};

void validate(const SatFormula& phi);
bool evaluate(const SatFormula& phi, const std::vector<bool>& assignment);
// Truth-table search; first satisfying assignment in binary counting order.
std::optional<std::vector<bool>> brute_force_sat(const SatFormula& phi);

enum class Occurrence { Absent, Positive, Negative };
// How variable x occurs in every clause (a positive occurrence wins when both do).
std::vector<Occurrence> occurrences(const SatFormula& phi, int x);

struct ClauseSquare {
    Point s, g, c, o, w, z;
};

// Geometry of the construction for k clauses.
struct Gadget {
    std::vector<ClauseSquare> sq;
    Point eta, u, v, t;
    int k() const { return static_cast<int>(sq.size()); }
    // index of s_j, g_j, c_j, u, v, t in the pointset
    static int s_index(int j) { return 3 * j; }
    static int g_index(int j) { return 3 * j + 1; }
    static int c_index(int j) { return 3 * j + 2; }
    int u_index() const { return 3 * k(); }
    int v_index() const { return 3 * k() + 1; }
    int t_index() const { return 3 * k() + 2; }
    std::vector<Point> pointset() const;
    // A-path visits s_j at odd clauses (1-based) and g_j at even ones; B-path the reverse.
    const Point& a(int j) const { return j % 2 == 0 ? sq[j].s : sq[j].g; }
    const Point& b(int j) const { return j % 2 == 0 ? sq[j].g : sq[j].s; }
};

Gadget make_gadget(int k);

// Variable subcurve from u to v for one occurrence pattern.
std::vector<Point> variable_curve(const Gadget& G, const std::vector<Occurrence>& occ);
// u, a_1..a_k, v (or the b points), with a c_j detour after every listed clause.
std::vector<Point> a_path(const Gadget& G, const std::vector<int>& detours = {});
std::vector<Point> b_path(const Gadget& G, const std::vector<int>& detours = {});

struct Reduction {
    SatFormula phi;
    Gadget gadget;
    CpmInstance instance;  // all_points set, eps = 1
};

Reduction reduce_3sat(const SatFormula& phi);
Polyline build_assignment_curve(const SatFormula& phi, const std::vector<bool>& assignment);

// Vertices of Q in S, every point of S used when all_points is set, and distF(P, Q) <= eps.
bool verify_feasible(const Polyline& Q, const CpmInstance& inst);

}  // namespace frechet
