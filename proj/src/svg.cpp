#include "frechet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "frechet/classic.hpp"
#include "frechet/fsmap.hpp"

namespace frechet {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    std::string s(buf);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

// t-range of |C - t b| <= eps within [0, 1]
std::optional<std::pair<double, double>> t_range(const Point& C, const Point& b, double eps) {
    double bb = dot(b, b), cb = dot(C, b), cc = dot(C, C) - eps * eps;
    double lo, hi;
    if (bb <= 1e-300) {
        if (cc > 0.0) return std::nullopt;
        lo = 0.0;
        hi = 1.0;
    } else {
        double disc = cb * cb - bb * cc;
        if (disc < 0.0) return std::nullopt;
        double r = std::sqrt(disc);
        lo = std::max(0.0, (cb - r) / bb);
        hi = std::min(1.0, (cb + r) / bb);
        if (lo > hi) return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

}  // namespace

std::vector<std::pair<double, double>> cell_free_polygon(const Point& p0, const Point& p1, const Point& q0,
                                                         const Point& q1, double eps, int resolution) {
    std::size_t d = p0.size();
    Point A(d), a(d), b(d);
    for (std::size_t k = 0; k < d; ++k) {
        A[k] = p0[k] - q0[k];
        a[k] = p1[k] - p0[k];
        b[k] = q1[k] - q0[k];
    }
    auto C = [&](double s) {
        Point c(d);
        for (std::size_t k = 0; k < d; ++k) c[k] = A[k] + s * a[k];
        return c;
    };
    // squared distance of the best t for a given s, convex in s
    auto f = [&](double s) {
        Point c = C(s);
        double bb = dot(b, b);
        double t = bb > 1e-300 ? std::clamp(dot(c, b) / bb, 0.0, 1.0) : 0.0;
        double r = 0.0;
        for (std::size_t k = 0; k < d; ++k) r += (c[k] - t * b[k]) * (c[k] - t * b[k]);
        return r;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (f(m1) <= f(m2)) hi = m2;
        else lo = m1;
    }
    double smin = 0.5 * (lo + hi), e2 = eps * eps;
    if (f(smin) > e2) return {};
    auto edge = [&](double in, double out) {
        if (f(out) <= e2) return out;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (in + out);
            if (f(mid) <= e2) in = mid;
            else out = mid;
        }
        return in;
    };
    double s0 = edge(smin, 0.0), s1 = edge(smin, 1.0);
    int r = std::max(2, resolution);
    std::vector<std::pair<double, double>> lower, upper;
    for (int q = 0; q <= r; ++q) {
        double s = s0 + (s1 - s0) * q / r;
        auto tr = t_range(C(s), b, eps);
        if (!tr) {
            double t = std::clamp(dot(C(s), b) / std::max(dot(b, b), 1e-300), 0.0, 1.0);
            tr = std::make_pair(t, t);
        }
        lower.push_back({s, tr->first});
        upper.push_back({s, tr->second});
    }
    std::vector<std::pair<double, double>> poly = lower;
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) poly.push_back(*it);
    return poly;
}

std::string render_free_space_svg(const Polyline& P, const Polyline& Q, double eps, const SvgOptions& opt) {
    int n = static_cast<int>(P.segments()), m = static_cast<int>(Q.segments());
    if (static_cast<long>(n) * m > kSvgMaxCells) throw ContractError("diagram exceeds the 10000 cell cap");
    if (!(eps >= 0.0)) throw ContractError("eps must be non-negative");
    int px = std::max(4, opt.cell_px), margin = 12;
    int W = n * px + 2 * margin, H = m * px + 2 * margin;
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"#ffffff\"/>\n";
    o << "<g id=\"diagram\" transform=\"translate(" << margin << ',' << margin + m * px << ") scale(" << px << ','
      << -px << ")\" data-n=\"" << n << "\" data-m=\"" << m << "\" data-eps=\"" << num(eps) << "\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << n << "\" height=\"" << m << "\" fill=\"#4a4a4a\"/>\n";
    o << "<g id=\"free\" fill=\"#f4f4f4\" stroke=\"none\">\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            auto poly = cell_free_polygon(P.vertex(i), P.vertex(i + 1), Q.vertex(j), Q.vertex(j + 1), eps, opt.resolution);
            if (poly.empty()) continue;
            o << "<polygon data-cell=\"" << i << ',' << j << "\" points=\"";
            for (std::size_t k = 0; k < poly.size(); ++k)
                o << (k ? " " : "") << num(i + poly[k].first) << ',' << num(j + poly[k].second);
            o << "\"/>\n";
        }
    o << "</g>\n<g id=\"grid\" stroke=\"#9a9a9a\" vector-effect=\"non-scaling-stroke\" stroke-width=\"1\">\n";
    for (int i = 0; i <= n; ++i)
        o << "<line x1=\"" << i << "\" y1=\"0\" x2=\"" << i << "\" y2=\"" << m << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    for (int j = 0; j <= m; ++j)
        o << "<line x1=\"0\" y1=\"" << j << "\" x2=\"" << n << "\" y2=\"" << j << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    o << "</g>\n";
    if (opt.reachable) {
        auto g = frechet_reach(P, Q, eps);
        o << "<g id=\"reach\" stroke=\"#c0392b\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= m; ++j) {
                if (j < m)
                    if (const auto& L = g.left(i, j))
                        o << "<line x1=\"" << i << "\" y1=\"" << num(j + L->lo) << "\" x2=\"" << i << "\" y2=\""
                          << num(j + L->hi) << "\" vector-effect=\"non-scaling-stroke\"/>\n";
                if (i < n)
                    if (const auto& B = g.bottom(i, j))
                        o << "<line x1=\"" << num(i + B->lo) << "\" y1=\"" << j << "\" x2=\"" << num(i + B->hi)
                          << "\" y2=\"" << j << "\" vector-effect=\"non-scaling-stroke\"/>\n";
            }
        o << "</g>\n";
    }
    if (opt.query) {
        FreeSpaceMap map(P, Q, eps);
        auto r = map.query(*opt.query);
        o << "<g id=\"query\" stroke=\"#2471a3\" stroke-width=\"2\" fill=\"none\">\n";
        if (r) {
            for (double x : {r->first, r->second})
                o << "<line x1=\"" << num(*opt.query) << "\" y1=\"0\" x2=\"" << num(x) << "\" y2=\"" << m
                  << "\" vector-effect=\"non-scaling-stroke\"/>\n";
        }
        o << "</g>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

}  // namespace frechet
