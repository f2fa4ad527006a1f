#pragma once

#include <array>
#include <functional>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

enum class CritKind { A, B, C, Bisection };
const char* kind_name(CritKind k);

struct CriticalValue {
    double value = 0.0;
    CritKind kind = CritKind::A;
    std::array<int, 4> witness{-1, -1, -1, -1};
};

struct Optimum {
    double value = 0.0;
    CritKind kind = CritKind::A;
};

// Reachable parts of the cell boundaries, same indexing as FreeSpace.
struct ReachGrid {
    int n = 0, m = 0;
    std::vector<OptInterval> lr, br;
    bool accepted = false;
    const OptInterval& left(int i, int j) const { return lr[static_cast<std::size_t>(i) * (m + 1) + j]; }
    const OptInterval& bottom(int i, int j) const { return br[static_cast<std::size_t>(i) * (m + 1) + j]; }
};

ReachGrid frechet_reach(const Polyline& P, const Polyline& Q, double eps);
bool decide_frechet(const Polyline& P, const Polyline& Q, double eps);

std::vector<CriticalValue> critical_values_classic(const Polyline& P, const Polyline& Q);
Optimum compute_frechet(const Polyline& P, const Polyline& Q);

double discrete_frechet(const Polyline& P, const Polyline& Q);

bool decide_weak_frechet(const Polyline& P, const Polyline& Q, double eps);
double compute_weak_frechet(const Polyline& P, const Polyline& Q);

// Candidate list sorted ascending with near-duplicates merged.
void sort_unique(std::vector<CriticalValue>& cands);

// Smallest candidate accepted by a monotone decision, checked just below and
// refined by bisection when the candidate set misses the true optimum.
// Returns +inf when even `upper` is rejected.
Optimum search_critical(std::vector<CriticalValue> cands, const std::function<bool(double)>& decide, double upper);

// Plain bisection on a monotone decision; lo rejected, hi accepted.
double bisect_decision(const std::function<bool(double)>& decide, double lo, double hi, double tol);

// Candidate bisector events: points of segment a->b equidistant from x and y.
void bisector_events(const Point& x, const Point& y, const Point& a, const Point& b, std::vector<double>& out);

double bbox_diagonal(const std::vector<const Polyline*>& curves);

}  // namespace frechet
