#include "frechet/classic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace frechet {

const char* kind_name(CritKind k) {
    switch (k) {
        case CritKind::A: return "A";
        case CritKind::B: return "B";
        case CritKind::C: return "C";
        case CritKind::Bisection: return "bisection";
    }
    return "?";
}

namespace {

OptInterval suffix_from(const OptInterval& f, double lo) {
    if (!f || lo > f->hi + 1e-12) return std::nullopt;
    return Interval{std::min(std::max(f->lo, lo), f->hi), f->hi};
}

}  // namespace

ReachGrid frechet_reach(const Polyline& P, const Polyline& Q, double eps) {
    FreeSpace fs(P, Q, eps);
    ReachGrid g;
    g.n = fs.n();
    g.m = fs.m();
    std::size_t sz = static_cast<std::size_t>(g.n + 1) * (g.m + 1);
    g.lr.assign(sz, std::nullopt);
    g.br.assign(sz, std::nullopt);
    auto idx = [&](int i, int j) { return static_cast<std::size_t>(i) * (g.m + 1) + j; };
    if (!within(dist2(P.vertex(0), Q.vertex(0)), eps)) return g;
    g.lr[idx(0, 0)] = Interval{0.0, 0.0};
    g.br[idx(0, 0)] = Interval{0.0, 0.0};
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.m; ++j) {
            const auto& L = g.lr[idx(i, j)];
            const auto& B = g.br[idx(i, j)];
            if (!L && !B) continue;
            const auto& topF = fs.bf(i, j + 1);
            const auto& rightF = fs.lf(i + 1, j);
            OptInterval top, right;
            if (L) top = topF;
            else top = suffix_from(topF, B->lo);
            if (B) right = rightF;
            else right = suffix_from(rightF, L->lo);
            if (top) g.br[idx(i, j + 1)] = top;
            if (right) g.lr[idx(i + 1, j)] = right;
        }
    bool end_ok = within(dist2(P.vertex(g.n), Q.vertex(g.m)), eps);
    g.accepted = end_ok && (g.lr[idx(g.n, g.m - 1)].has_value() || g.br[idx(g.n - 1, g.m)].has_value());
    return g;
}

bool decide_frechet(const Polyline& P, const Polyline& Q, double eps) { return frechet_reach(P, Q, eps).accepted; }

void bisector_events(const Point& x, const Point& y, const Point& a, const Point& b, std::vector<double>& out) {
    double ax2 = 0.0, ay2 = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = b[k] - a[k];
        double ax = a[k] - x[k], ay = a[k] - y[k];
        ax2 += ax * ax;
        ay2 += ay * ay;
        den += 2.0 * d * (ax - ay);
    }
    if (std::fabs(den) < 1e-300) return;
    double t = (ay2 - ax2) / den;
    if (t < -1e-12 || t > 1.0 + 1e-12) return;
    t = std::clamp(t, 0.0, 1.0);
    out.push_back(dist(lerp(a, b, t), x));
}

void sort_unique(std::vector<CriticalValue>& cands) {
    std::stable_sort(cands.begin(), cands.end(),
                     [](const CriticalValue& a, const CriticalValue& b) { return a.value < b.value; });
    std::vector<CriticalValue> out;
    for (const auto& c : cands) {
        if (!out.empty() && c.value - out.back().value <= 1e-12 * std::max(1.0, std::fabs(c.value))) continue;
        out.push_back(c);
    }
    cands.swap(out);
}

std::vector<CriticalValue> critical_values_classic(const Polyline& P, const Polyline& Q) {
    std::vector<CriticalValue> out;
    int n = static_cast<int>(P.segments()), m = static_cast<int>(Q.segments());
    out.push_back({dist(P.vertex(0), Q.vertex(0)), CritKind::A, {0, 0, -1, -1}});
    out.push_back({dist(P.vertex(n), Q.vertex(m)), CritKind::A, {n, m, -1, -1}});
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < m; ++j)
            out.push_back({point_segment_dist(P.vertex(i), Q.vertex(j), Q.vertex(j + 1)), CritKind::B, {i, j, 0, -1}});
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i < n; ++i)
            out.push_back({point_segment_dist(Q.vertex(j), P.vertex(i), P.vertex(i + 1)), CritKind::B, {i, j, 1, -1}});
    std::vector<double> ev;
    auto typec = [&](const Polyline& A, const Polyline& B, int orient) {
        int na = static_cast<int>(A.segments()), nb = static_cast<int>(B.segments());
        for (int k = 0; k <= na; ++k)
            for (int l = k + 1; l <= na; ++l)
                for (int j = 0; j < nb; ++j) {
                    ev.clear();
                    bisector_events(A.vertex(k), A.vertex(l), B.vertex(j), B.vertex(j + 1), ev);
                    for (double v : ev) out.push_back({v, CritKind::C, {k, l, j, orient}});
                }
    };
    typec(P, Q, 0);
    typec(Q, P, 1);
    sort_unique(out);
    return out;
}

double bisect_decision(const std::function<bool(double)>& decide, double lo, double hi, double tol) {
    for (int it = 0; it < 200 && hi - lo > std::max(tol, 1e-15 * hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (decide(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

namespace {

// Bisection result labelled by a candidate lying within rounding distance of it.
Optimum label(const std::vector<CriticalValue>& cands, double v) {
    double tol = std::max(1e-12, 1e-9 * v);
    for (const auto& c : cands)
        if (std::fabs(c.value - v) <= tol) return {v, c.kind};
    return {v, CritKind::Bisection};
}

}  // namespace

Optimum search_critical(std::vector<CriticalValue> cands, const std::function<bool(double)>& decide, double upper) {
    sort_unique(cands);
    std::size_t lo = 0, hi = cands.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (decide(cands[mid].value)) hi = mid;
        else lo = mid + 1;
    }
    if (lo == cands.size()) {
        double below = cands.empty() ? 0.0 : cands.back().value;
        if (!decide(upper)) return {std::numeric_limits<double>::infinity(), CritKind::Bisection};
        return label(cands, bisect_decision(decide, below, upper, 1e-12 * std::max(1.0, upper)));
    }
    Optimum best{cands[lo].value, cands[lo].kind};
    if (best.value <= 0.0) return best;
    double margin = std::max(1e-12, 1e-9 * best.value);
    if (!decide(best.value - margin)) return best;
    double below = lo > 0 ? cands[lo - 1].value : 0.0;
    if (lo == 0 && decide(0.0)) return {0.0, CritKind::Bisection};
    return label(cands, bisect_decision(decide, below, best.value - margin, 1e-12 * std::max(1.0, best.value)));
}

double bbox_diagonal(const std::vector<const Polyline*>& curves) {
    std::size_t d = curves.front()->dim();
    Point lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
    for (const auto* c : curves)
        for (const auto& p : c->vertices())
            for (std::size_t k = 0; k < d; ++k) {
                lo[k] = std::min(lo[k], p[k]);
                hi[k] = std::max(hi[k], p[k]);
            }
    return dist(lo, hi);
}

Optimum compute_frechet(const Polyline& P, const Polyline& Q) {
    auto cands = critical_values_classic(P, Q);
    return search_critical(std::move(cands), [&](double e) { return decide_frechet(P, Q, e); },
                           2.0 * bbox_diagonal({&P, &Q}) + 1.0);
}

double discrete_frechet(const Polyline& P, const Polyline& Q) {
    std::size_t a = P.vertices().size(), b = Q.vertices().size();
    std::vector<double> dp(a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            double d = dist(P.vertex(i), Q.vertex(j));
            double prev;
            if (i == 0 && j == 0) prev = 0.0;
            else if (i == 0) prev = dp[j - 1];
            else if (j == 0) prev = dp[(i - 1) * b];
            else prev = std::min({dp[(i - 1) * b + j], dp[i * b + j - 1], dp[(i - 1) * b + j - 1]});
            dp[i * b + j] = std::max(prev, d);
        }
    return dp.back();
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

struct WeakEdge {
    int a, b;
    double w;
};

std::vector<WeakEdge> weak_edges(const Polyline& P, const Polyline& Q, int& s, int& t) {
    int n = static_cast<int>(P.segments()), m = static_cast<int>(Q.segments());
    auto cell = [m](int i, int j) { return i * m + j; };
    s = n * m;
    t = n * m + 1;
    std::vector<WeakEdge> e;
    e.push_back({s, cell(0, 0), dist(P.vertex(0), Q.vertex(0))});
    e.push_back({t, cell(n - 1, m - 1), dist(P.vertex(n), Q.vertex(m))});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            if (i + 1 < n)
                e.push_back({cell(i, j), cell(i + 1, j), point_segment_dist(P.vertex(i + 1), Q.vertex(j), Q.vertex(j + 1))});
            if (j + 1 < m)
                e.push_back({cell(i, j), cell(i, j + 1), point_segment_dist(Q.vertex(j + 1), P.vertex(i), P.vertex(i + 1))});
        }
    return e;
}

bool weak_connected(const std::vector<WeakEdge>& edges, int nodes, int s, int t, double eps) {
    UnionFind uf(nodes);
    for (const auto& e : edges)
        if (within(e.w * e.w, eps)) uf.unite(e.a, e.b);
    return uf.find(s) == uf.find(t);
}

}  // namespace

bool decide_weak_frechet(const Polyline& P, const Polyline& Q, double eps) {
    int s, t;
    auto edges = weak_edges(P, Q, s, t);
    return weak_connected(edges, t + 1, s, t, eps);
}

double compute_weak_frechet(const Polyline& P, const Polyline& Q) {
    int s, t;
    auto edges = weak_edges(P, Q, s, t);
    std::vector<double> w;
    for (const auto& e : edges) w.push_back(e.w);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    std::size_t lo = 0, hi = w.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (weak_connected(edges, t + 1, s, t, w[mid])) hi = mid;
        else lo = mid + 1;
    }
    return w[lo];
}

}  // namespace frechet
