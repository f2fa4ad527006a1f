#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frechet {

using Point = std::vector<double>;

// Raised when an input violates an operation's contract.
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x, double slack = 1e-12) const { return x >= lo - slack && x <= hi + slack; }
    double length() const { return hi - lo; }
};
using OptInterval = std::optional<Interval>;

double dot(const Point& a, const Point& b);
double dist2(const Point& a, const Point& b);
double dist(const Point& a, const Point& b);
Point lerp(const Point& a, const Point& b, double t);
double point_segment_dist(const Point& p, const Point& a, const Point& b);

// Squared-distance test against eps with a small relative/absolute slack.
bool within(double d2, double eps);

class Polyline {
public:
    Polyline() = default;
    explicit Polyline(std::vector<Point> vertices);

    std::size_t segments() const { return pts_.size() - 1; }
    std::size_t dim() const { return pts_.empty() ? 0 : pts_[0].size(); }
    const Point& vertex(std::size_t i) const { return pts_[i]; }
    const std::vector<Point>& vertices() const { return pts_; }
    double seg_length(std::size_t i) const { return cum_[i + 1] - cum_[i]; }
    double length() const { return cum_.back(); }
    const std::vector<double>& cumulative_lengths() const { return cum_; }

    // Diagram parameter x in [0, segments()] to point / arc length.
    Point at(double x) const;
    double arclen(double x) const;
    Polyline subcurve(double a, double b) const;
    bool closed() const;

private:
    std::vector<Point> pts_;
    std::vector<double> cum_;
};

// Parameter range of a->b within eps of c.
OptInterval segment_ball_interval(const Point& a, const Point& b, const Point& c, double eps);

bool cell_free_space_membership(const Point& p0, const Point& p1, const Point& q0, const Point& q1,
                                double s, double t, double eps);

struct CellIntervals {
    OptInterval lf;  // left edge x = i, along Q_j
    OptInterval bf;  // bottom edge y = j, along P_i
};

// (n+1) x (m+1) grid; lf valid for j < m, bf valid for i < n.
class FreeSpace {
public:
    FreeSpace(const Polyline& P, const Polyline& Q, double eps);
    int n() const { return n_; }
    int m() const { return m_; }
    const CellIntervals& at(int i, int j) const { return cells_[static_cast<std::size_t>(i) * (m_ + 1) + j]; }
    const OptInterval& lf(int i, int j) const { return at(i, j).lf; }
    const OptInterval& bf(int i, int j) const { return at(i, j).bf; }

private:
    int n_, m_;
    std::vector<CellIntervals> cells_;
};

inline FreeSpace build_cell_intervals(const Polyline& P, const Polyline& Q, double eps) { return FreeSpace(P, Q, eps); }

}  // namespace frechet
