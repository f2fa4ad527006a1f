#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "frechet/classic.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SpeedLimit {
    double vmin = 0.0;
    double vmax = kInf;
};

struct SpeedProfiles {
    std::vector<SpeedLimit> P, Q;
    static SpeedProfiles unconstrained(std::size_t n, std::size_t m);
};

// Cumulative traversal times along one curve at a fixed per-segment speed choice.
class TravelTimes {
public:
    TravelTimes() = default;
    TravelTimes(const Polyline& C, const std::vector<SpeedLimit>& lim, bool use_max);
    int segments() const { return static_cast<int>(tau_.size()); }
    // time per unit parameter on segment k (0 = instantaneous, inf = stalled)
    double tau(int k) const { return tau_[k]; }
    double time(double a, double b) const;
    double vertex_time(int a, int b) const;

private:
    std::vector<double> tau_, F_;
    std::vector<int> Z_;
};

struct DiagPoint {
    double x = 0.0, y = 0.0;
};

struct DiagEdge {
    bool horizontal = true;  // horizontal: y = j, x in [i, i+1]; vertical: x = i, y in [j, j+1]
    int i = 0, j = 0;
};

enum class ProjDir { Min, Max };
enum class ProjPos { Before, On, After };
struct Projection {
    ProjPos pos = ProjPos::Before;
    DiagPoint at;
};

class SpeedModel {
public:
    SpeedModel(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof);
    const Polyline& P() const { return *P_; }
    const Polyline& Q() const { return *Q_; }
    int n() const { return static_cast<int>(P_->segments()); }
    int m() const { return static_cast<int>(Q_->segments()); }
    double min_slope(int i, int j) const;
    double max_slope(int i, int j) const;
    bool blocked() const { return blocked_; }
    // Max chains move P slowly and Q fast; min chains the reverse.
    const TravelTimes& p_times(ProjDir d) const { return d == ProjDir::Max ? pslow_ : pfast_; }
    const TravelTimes& q_times(ProjDir d) const { return d == ProjDir::Max ? qfast_ : qslow_; }

private:
    const Polyline* P_;
    const Polyline* Q_;
    std::vector<double> upmin_, upmax_, uqmin_, uqmax_;
    TravelTimes pslow_, pfast_, qslow_, qfast_;
    bool blocked_ = false;
};

Projection min_max_projection(const SpeedModel& sm, DiagPoint p, DiagEdge e, ProjDir dir);

// Cell-local coordinates: entry side runs from the top-left corner down the
// left edge (0..1) and along the bottom edge (1..2); exit side runs along the
// top edge (0..1) and down the right edge (1..2).
double ray_exit(double entry, double slope);
Interval project_interval(Interval entry, double minS, double maxS);

struct SpeedCellTrace {
    int i = 0, j = 0;
    std::vector<Interval> entry;  // merged entry coordinates
    std::vector<Interval> top;    // x on the top edge
    std::vector<Interval> right;  // y on the right edge
    std::vector<Interval> left_in, bottom_in;
};

bool decide_speed_simple(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof, double eps,
                         std::vector<SpeedCellTrace>* trace = nullptr);

using FastCellHook = std::function<void(int i, int j, const std::vector<Interval>& top, const std::vector<Interval>& right)>;
bool decide_speed_fast(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof, double eps,
                       const FastCellHook* hook = nullptr);

struct SpeedInstance {
    Polyline P, Q;
    SpeedProfiles prof;
    double eps = 0.0;
};

SpeedInstance lower_bound_instance(int n);
// Largest number of reachable intervals on one entry side of the last-row cells right of the middle.
int lower_bound_interval_count(const SpeedInstance& inst);

std::vector<std::pair<int, int>> compute_potential_chains(const TravelTimes& slow, double t);
std::vector<double> type_c_criticals_speed(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof);
std::vector<CriticalValue> critical_values_speed(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof);
Optimum compute_speed_frechet(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof);

}  // namespace frechet
