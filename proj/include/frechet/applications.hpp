#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "frechet/classic.hpp"
#include "frechet/fsmap.hpp"

namespace frechet {

// Parameter range [start, end] on P of a matching subcurve.
struct SubcurveMatch {
    double start = 0.0, end = 0.0;
    double length = 0.0;  // arc length of P between start and end
};

std::optional<SubcurveMatch> partial_match(const Polyline& P, const Polyline& Q, double eps);
bool partial_match_decide(const Polyline& P, const Polyline& Q, double eps);
Optimum partial_match_optimize(const Polyline& P, const Polyline& Q);

// P with its seam vertex dropped and the vertex list repeated (2n segments).
Polyline double_closed_curve(const Polyline& P);
// Shift t in [0, n) such that P from t around to t again matches Q.
std::optional<double> closed_frechet_shift(const Polyline& P, const Polyline& Q, double eps);
bool closed_frechet_decide(const Polyline& P, const Polyline& Q, double eps);
Optimum closed_frechet_optimize(const Polyline& P, const Polyline& Q);

std::optional<SubcurveMatch> max_walk(const Polyline& P, const Polyline& Q, double eps);
std::optional<SubcurveMatch> min_walk(const Polyline& P, const Polyline& Q, double eps);

class GeometricDag {
public:
    GeometricDag() = default;
    GeometricDag(std::vector<Point> vertices, std::vector<std::pair<int, int>> edges);
    int size() const { return static_cast<int>(pts_.size()); }
    const Point& vertex(int v) const { return pts_[v]; }
    const std::vector<Point>& vertices() const { return pts_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& in_edges(int v) const { return in_[v]; }  // edge indices
    const std::vector<int>& topological_order() const { return order_; }

private:
    std::vector<Point> pts_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> in_;
    std::vector<int> order_;
};

// L layers, each a copy of S, with every edge between consecutive layers.
GeometricDag layered_complete_dag(const std::vector<Point>& S, int layers);

struct DagPath {
    std::vector<int> vertices;
    // edge mode: fractional points on the first / last edge, when used
    std::optional<Point> head, tail;
    Polyline curve() const;
    const GeometricDag* dag = nullptr;
};

struct DagMatchResult {
    bool matched = false;
    std::optional<DagPath> path;
};

DagMatchResult dag_match_decide(const Polyline& P, const GeometricDag& G, double eps, bool inside_edges = false);
std::vector<CriticalValue> dag_critical_values(const Polyline& P, const GeometricDag& G);
Optimum dag_match_optimize(const Polyline& P, const GeometricDag& G, bool inside_edges = false);

}  // namespace frechet
