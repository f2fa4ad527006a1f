#include "frechet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace frechet {

double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double dist2(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

Point lerp(const Point& a, const Point& b, double t) {
    Point r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + t * (b[k] - a[k]);
    return r;
}

double point_segment_dist(const Point& p, const Point& a, const Point& b) {
    double dd = 0.0, wd = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = b[k] - a[k];
        dd += d * d;
        wd += (p[k] - a[k]) * d;
    }
    double t = dd > 0.0 ? std::clamp(wd / dd, 0.0, 1.0) : 0.0;
    return dist(p, lerp(a, b, t));
}

bool within(double d2, double eps) { return d2 <= eps * eps * (1.0 + 1e-10) + 1e-13; }

Polyline::Polyline(std::vector<Point> vertices) : pts_(std::move(vertices)) {
    if (pts_.empty()) throw ContractError("polyline needs at least one vertex");
    std::size_t d = pts_[0].size();
    for (const auto& p : pts_) {
        if (p.size() != d || d < 1) throw ContractError("polyline vertices must share one dimension");
        for (double c : p)
            if (!std::isfinite(c)) throw ContractError("polyline coordinates must be finite");
    }
    if (pts_.size() == 1) pts_.push_back(pts_[0]);
    cum_.assign(pts_.size(), 0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i) cum_[i] = cum_[i - 1] + dist(pts_[i - 1], pts_[i]);
}

Point Polyline::at(double x) const {
    double n = static_cast<double>(segments());
    x = std::clamp(x, 0.0, n);
    std::size_t i = std::min(static_cast<std::size_t>(x), segments() - 1);
    return lerp(pts_[i], pts_[i + 1], x - static_cast<double>(i));
}

double Polyline::arclen(double x) const {
    double n = static_cast<double>(segments());
    x = std::clamp(x, 0.0, n);
    std::size_t i = std::min(static_cast<std::size_t>(x), segments() - 1);
    return cum_[i] + (x - static_cast<double>(i)) * seg_length(i);
}

Polyline Polyline::subcurve(double a, double b) const {
    std::vector<Point> out{at(a)};
    for (std::size_t k = static_cast<std::size_t>(std::floor(a)) + 1; static_cast<double>(k) < b; ++k) out.push_back(pts_[k]);
    out.push_back(at(b));
    return Polyline(std::move(out));
}

bool Polyline::closed() const { return dist2(pts_.front(), pts_.back()) <= 1e-24; }

OptInterval segment_ball_interval(const Point& a, const Point& b, const Point& c, double eps) {
    double dd = 0.0, wd = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = b[k] - a[k];
        dd += d * d;
        wd += (a[k] - c[k]) * d;
    }
    if (dd <= 1e-300) {
        if (within(dist2(a, c), eps)) return Interval{0.0, 1.0};
        return std::nullopt;
    }
    // endpoints use the same test as diagram corners
    bool a_in = within(dist2(a, c), eps), b_in = within(dist2(b, c), eps);
    double ts = -wd / dd;
    double tc = std::clamp(ts, 0.0, 1.0);
    if (!within(dist2(lerp(a, b, tc), c), eps)) {
        if (!a_in && !b_in) return std::nullopt;
        return Interval{a_in ? 0.0 : 1.0, b_in ? 1.0 : 0.0};
    }
    double h = std::sqrt(std::max(0.0, eps * eps - dist2(lerp(a, b, ts), c)) / dd);
    double lo = std::max(0.0, ts - h), hi = std::min(1.0, ts + h);
    if (lo > hi) lo = hi = tc;
    if (a_in) lo = 0.0;
    if (b_in) hi = 1.0;
    return Interval{lo, hi};
}

bool cell_free_space_membership(const Point& p0, const Point& p1, const Point& q0, const Point& q1,
                                double s, double t, double eps) {
    return within(dist2(lerp(p0, p1, s), lerp(q0, q1, t)), eps);
}

FreeSpace::FreeSpace(const Polyline& P, const Polyline& Q, double eps)
    : n_(static_cast<int>(P.segments())), m_(static_cast<int>(Q.segments())),
      cells_(static_cast<std::size_t>(n_ + 1) * (m_ + 1)) {
    for (int i = 0; i <= n_; ++i)
        for (int j = 0; j <= m_; ++j) {
            auto& c = cells_[static_cast<std::size_t>(i) * (m_ + 1) + j];
            if (j < m_) c.lf = segment_ball_interval(Q.vertex(j), Q.vertex(j + 1), P.vertex(i), eps);
            if (i < n_) c.bf = segment_ball_interval(P.vertex(i), P.vertex(i + 1), Q.vertex(j), eps);
        }
}

}  // namespace frechet
