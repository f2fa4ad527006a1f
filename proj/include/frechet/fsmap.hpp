#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

// Levels 0..L-1 each carry a left-attached segment [0, a] and a right-attached
// segment (b, 1]. A ray from the right end of s_k travels upward at height a_k.
struct RayHit {
    enum Kind { None, S, T } kind = None;
    int level = -1;
};

std::vector<RayHit> ray_shoot_up(const std::vector<double>& a, const std::vector<double>& b);
std::vector<RayHit> ray_shoot_up_naive(const std::vector<double>& a, const std::vector<double>& b);
// Index of the topmost T segment reachable from each s_k (L-1 when nothing blocks).
std::vector<int> topmost_reachable(const std::vector<RayHit>& up);
std::vector<int> topmost_reachable_naive(const std::vector<double>& a, const std::vector<double>& b);

// One horizontal strip: per-cell feasible intervals on the bottom and top rows
// (absolute x), and the feasible interval on every vertical level (local y).
struct Strip {
    std::vector<OptInterval> bottom, top, level;
    int cells() const { return static_cast<int>(bottom.size()); }
};

Strip map_strip(const FreeSpace& fs, int j);  // between rows j and j+1
Strip rotate_strip(const Strip& s);
std::vector<OptInterval> flip_cells(const std::vector<OptInterval>& v, int n);

struct StripReach {
    std::vector<OptInterval> top;                // per cell
    std::vector<std::optional<double>> rp;       // rightmost top point for a start inside each cell
    std::optional<double> rp_end;                // same for the start point x = n
    std::vector<char> exits_right;               // start in cell reaches the right level
    bool end_exits_right = false;
    std::optional<double> left_rp;               // left-level source
    bool left_exits_right = false;
};

StripReach propagate_strip(const Strip& s, const std::vector<OptInterval>& start, bool left_source = false);

// Row j reachable set from the row j-1 one, both per cell.
std::vector<OptInterval> propagate_row(const FreeSpace& fs, int j, const std::vector<OptInterval>& prev);

struct RowSet {
    int row = 0;
    std::vector<Interval> intervals;
};

// Per-cell interval list with constant-time neighbour lookups.
class CellSet {
public:
    CellSet() = default;
    explicit CellSet(std::vector<OptInterval> iv);
    int cells() const { return static_cast<int>(iv_.size()); }
    const OptInterval& at(int c) const { return iv_[c]; }
    const std::vector<OptInterval>& all() const { return iv_; }
    std::optional<double> next(double x) const;  // leftmost member >= x
    std::optional<double> prev(double x) const;  // rightmost member <= x
    bool contains(double x) const;
    int first_from(int c) const { return c < cells() ? nxt_[c] : -1; }
    std::vector<Interval> merged() const;
    // maximal merged interval holding x
    std::optional<Interval> component(double x) const;

private:
    std::vector<OptInterval> iv_;
    std::vector<int> nxt_, prv_;
};

using PointerPair = std::pair<double, double>;

class FreeSpaceMap {
public:
    FreeSpaceMap(const Polyline& P, const Polyline& Q, double eps, bool improved = true);

    int n() const { return n_; }
    int m() const { return m_; }
    const FreeSpace& free_space() const { return fs_; }
    const CellSet& feasible(int j) const { return F_[j]; }
    const CellSet& reachable(int j) const { return R_[j]; }
    const CellSet& takeoff(int j) const { return T_[j]; }
    RowSet row(int j) const;
    std::optional<double> right_pointer(int j, double x) const;  // rp_{j+1} of a take-off point x on row j
    std::vector<std::optional<double>> interval_pointers(int j) const;

    std::optional<double> next_reachable(int j, double x) const { return R_[j].next(x); }
    std::optional<double> prev_takeoff(int j, double x) const { return T_[j].prev(x); }

    // Row-by-row (lp_j, rp_j) of a point x in R(i), rows i..m.
    std::vector<std::optional<PointerPair>> walk(int i, double x) const;
    std::optional<PointerPair> query_walk(double x) const;
    std::optional<PointerPair> query(double x) const;

    struct StartInterval {
        Interval I;
        std::optional<double> last;  // rightmost start in I reaching row m
        std::optional<double> rpm;
    };
    struct Piece {
        double lo, hi;
        bool lo_open, hi_open;
        bool identity;               // lp_m equals the start itself
        std::optional<double> lpm;   // otherwise the constant lp_m
    };
    bool improved() const { return improved_; }
    const std::vector<StartInterval>& starts() const { return starts_; }
    const std::vector<Piece>& pieces(int c) const { return pieces_[c]; }
    const StartInterval* start_of(double x) const;
    const CellSet& back_reach_row0() const { return B0_; }

private:
    int n_, m_;
    FreeSpace fs_;
    std::vector<CellSet> F_, R_, T_;
    std::vector<std::vector<std::optional<double>>> rp_;
    std::vector<std::optional<double>> rp_end_;
    bool improved_;
    CellSet B0_;
    std::vector<StartInterval> starts_;
    std::vector<std::vector<Piece>> pieces_;

    int cell_of(double x) const;
    void build_improved();
};

}  // namespace frechet
