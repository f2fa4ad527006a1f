#include "frechet/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frechet {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kInfD = std::numeric_limits<double>::infinity();

double diagram_upper(const std::vector<const Polyline*>& curves) { return bbox_diagonal(curves) * 1.01 + 1e-9; }

SubcurveMatch make_match(const Polyline& P, double a, double b) { return {a, b, P.arclen(b) - P.arclen(a)}; }

}  // namespace

std::optional<SubcurveMatch> partial_match(const Polyline& P, const Polyline& Q, double eps) {
    FreeSpaceMap map(P, Q, eps);
    for (const auto& s : map.starts()) {
        if (!s.last) continue;
        auto q = map.query(s.I.lo);
        if (q) return make_match(P, s.I.lo, q->first);
    }
    return std::nullopt;
}

bool partial_match_decide(const Polyline& P, const Polyline& Q, double eps) {
    FreeSpaceMap map(P, Q, eps);
    for (const auto& s : map.starts())
        if (s.last) return true;
    return false;
}

Optimum partial_match_optimize(const Polyline& P, const Polyline& Q) {
    return search_critical(critical_values_classic(P, Q), [&](double e) { return partial_match_decide(P, Q, e); },
                           diagram_upper({&P, &Q}));
}

Polyline double_closed_curve(const Polyline& P) {
    if (P.segments() < 1 || !P.closed()) throw ContractError("curve is not closed");
    std::vector<Point> v;
    std::size_t n = P.segments();
    for (int rep = 0; rep < 2; ++rep)
        for (std::size_t k = 0; k < n; ++k) v.push_back(P.vertex(k));
    v.push_back(P.vertex(0));
    return Polyline(std::move(v));
}

std::optional<double> closed_frechet_shift(const Polyline& P, const Polyline& Q, double eps) {
    if (!Q.closed()) throw ContractError("curve is not closed");
    Polyline P2 = double_closed_curve(P);
    int n = static_cast<int>(P.segments());
    FreeSpaceMap map(P2, Q, eps);
    const auto& Rm = map.reachable(map.m());
    for (int c = 0; c < n; ++c) {
        const auto& end = Rm.at(c + n);
        if (!end) continue;
        for (const auto& p : map.pieces(c)) {
            const auto* st = map.start_of(p.lo);
            if (!st || !st->last) continue;
            double lo = std::max(p.lo, end->lo - n);
            double hi = std::min({p.hi, *st->last, *st->rpm - n, end->hi - n});
            if (!p.identity) {
                if (!p.lpm) continue;
                lo = std::max(lo, *p.lpm - n);
            }
            if (lo <= hi + kSlack) {
                double t = std::clamp(lo, static_cast<double>(c), static_cast<double>(c + 1));
                return t >= n ? t - n : t;
            }
        }
    }
    return std::nullopt;
}

bool closed_frechet_decide(const Polyline& P, const Polyline& Q, double eps) {
    return closed_frechet_shift(P, Q, eps).has_value();
}

Optimum closed_frechet_optimize(const Polyline& P, const Polyline& Q) {
    Polyline P2 = double_closed_curve(P);
    return search_critical(critical_values_classic(P2, Q), [&](double e) { return closed_frechet_decide(P, Q, e); },
                           diagram_upper({&P, &Q}));
}

std::optional<SubcurveMatch> max_walk(const Polyline& P, const Polyline& Q, double eps) {
    FreeSpaceMap map(P, Q, eps);
    std::optional<SubcurveMatch> best;
    for (const auto& s : map.starts()) {
        if (!s.last) continue;
        auto m = make_match(P, s.I.lo, *s.rpm);
        if (!best || m.length > best->length) best = m;
    }
    return best;
}

std::optional<SubcurveMatch> min_walk(const Polyline& P, const Polyline& Q, double eps) {
    FreeSpaceMap map(P, Q, eps);
    std::optional<SubcurveMatch> best;
    for (int c = 0; c < map.n(); ++c)
        for (const auto& p : map.pieces(c)) {
            const auto* st = map.start_of(p.lo);
            if (!st || !st->last) continue;
            double u = std::min(p.hi, *st->last);
            if (u < p.lo - kSlack) continue;
            SubcurveMatch m;
            if (p.identity) m = make_match(P, u, u);
            else if (p.lpm) m = make_match(P, u, *p.lpm);
            else continue;
            if (!best || m.length < best->length) best = m;
        }
    return best;
}

GeometricDag::GeometricDag(std::vector<Point> vertices, std::vector<std::pair<int, int>> edges)
    : pts_(std::move(vertices)), edges_(std::move(edges)) {
    int V = size();
    in_.assign(V, {});
    std::vector<int> indeg(V, 0);
    std::vector<std::vector<int>> out(V);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [a, b] = edges_[e];
        if (a < 0 || a >= V || b < 0 || b >= V) throw ContractError("edge endpoint out of range");
        in_[b].push_back(static_cast<int>(e));
        out[a].push_back(b);
        ++indeg[b];
    }
    std::vector<int> ready;
    for (int v = V - 1; v >= 0; --v)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        order_.push_back(v);
        for (int w : out[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    if (static_cast<int>(order_.size()) != V) throw ContractError("graph has a cycle");
}

GeometricDag layered_complete_dag(const std::vector<Point>& S, int layers) {
    int k = static_cast<int>(S.size());
    std::vector<Point> pts;
    std::vector<std::pair<int, int>> edges;
    for (int l = 0; l < layers; ++l) pts.insert(pts.end(), S.begin(), S.end());
    for (int l = 0; l + 1 < layers; ++l)
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) edges.push_back({l * k + a, (l + 1) * k + b});
    return GeometricDag(std::move(pts), std::move(edges));
}

Polyline DagPath::curve() const {
    std::vector<Point> v;
    if (head) v.push_back(*head);
    for (int x : vertices) v.push_back(dag->vertex(x));
    if (tail) v.push_back(*tail);
    if (v.size() == 1) v.push_back(v.front());
    return Polyline(std::move(v));
}

namespace {

std::vector<OptInterval> hull_union(std::vector<OptInterval> a, const std::vector<OptInterval>& b) {
    for (std::size_t c = 0; c < a.size(); ++c) {
        if (!b[c]) continue;
        if (!a[c]) a[c] = b[c];
        else a[c] = Interval{std::min(a[c]->lo, b[c]->lo), std::max(a[c]->hi, b[c]->hi)};
    }
    return a;
}

// Everything reachable by moving right inside F from the seeds.
std::vector<OptInterval> right_closure(const std::vector<OptInterval>& F, const std::vector<OptInterval>& seeds) {
    int n = static_cast<int>(F.size());
    std::vector<OptInterval> out(n);
    bool carry = false;
    for (int c = 0; c < n; ++c) {
        if (!F[c]) {
            carry = false;
            continue;
        }
        if (carry && F[c]->lo <= c + kSlack) out[c] = F[c];
        else if (seeds[c] && seeds[c]->lo <= F[c]->hi + kSlack)
            out[c] = Interval{std::clamp(seeds[c]->lo, F[c]->lo, F[c]->hi), F[c]->hi};
        carry = out[c] && F[c]->hi >= c + 1 - kSlack;
    }
    return out;
}

std::vector<OptInterval> point_row(int n, double x) {
    std::vector<OptInterval> s(n);
    s[std::clamp(static_cast<int>(std::floor(x)), 0, n - 1)] = Interval{x, x};
    return s;
}

// Height at which a path entering the strip on level `from` leaves through level n.
double exit_height(const Strip& s, int from) {
    double h = 0.0;
    for (int k = from; k <= s.cells(); ++k) h = std::max(h, s.level[k]->lo);
    return h;
}

struct DagSweep {
    const Polyline& P;
    const GeometricDag& G;
    double eps;
    bool inside;
    int n;
    std::vector<std::vector<OptInterval>> F, R;
    std::vector<Strip> strip;
    std::vector<StripReach> from_bottom;
    std::vector<std::vector<OptInterval>> from_left;
    std::vector<char> start;

    DagSweep(const Polyline& P_, const GeometricDag& G_, double eps_, bool inside_)
        : P(P_), G(G_), eps(eps_), inside(inside_), n(static_cast<int>(P_.segments())) {
        int V = G.size();
        F.assign(V, std::vector<OptInterval>(n));
        R.assign(V, std::vector<OptInterval>(n));
        start.assign(V, 0);
        for (int v = 0; v < V; ++v) {
            for (int c = 0; c < n; ++c)
                if (auto iv = segment_ball_interval(P.vertex(c), P.vertex(c + 1), G.vertex(v), eps))
                    F[v][c] = Interval{c + iv->lo, c + iv->hi};
            start[v] = within(dist2(P.vertex(0), G.vertex(v)), eps);
        }
        for (const auto& [a, b] : G.edges()) {
            FreeSpace fs(P, Polyline({G.vertex(a), G.vertex(b)}), eps);
            strip.push_back(map_strip(fs, 0));
        }
        from_bottom.resize(G.edges().size());
        from_left.assign(G.edges().size(), std::vector<OptInterval>(n));
        for (int v : G.topological_order()) {
            std::vector<OptInterval> seeds(n);
            if (start[v]) seeds[0] = Interval{0.0, 0.0};
            for (int e : G.in_edges(v)) {
                int j = G.edges()[e].first;
                from_bottom[e] = propagate_strip(strip[e], R[j], inside);
                seeds = hull_union(seeds, from_bottom[e].top);
                if (inside) {
                    from_left[e] = propagate_strip(strip[e], std::vector<OptInterval>(n), true).top;
                    seeds = hull_union(seeds, from_left[e]);
                }
            }
            R[v] = right_closure(F[v], seeds);
        }
    }

    Point on_edge(int e, double y) const {
        auto [a, b] = G.edges()[e];
        return lerp(G.vertex(a), G.vertex(b), y);
    }

    // Walk back pointers from (x, v) to a start.
    void trace(int v, double x, DagPath& path) const {
        for (;;) {
            path.vertices.push_back(v);
            CellSet Fv(F[v]);
            auto comp = Fv.component(x);
            double floor_x = comp ? comp->lo : x;
            if (start[v] && floor_x <= kSlack) break;
            bool moved = false;
            if (inside) {
                for (int e : G.in_edges(v)) {
                    auto xp = CellSet(from_left[e]).prev(x);
                    if (!xp || *xp < floor_x - kSlack) continue;
                    path.head = on_edge(e, strip[e].level[0]->lo);
                    moved = true;
                    break;
                }
                if (moved) break;
            }
            for (int e : G.in_edges(v)) {
                int j = G.edges()[e].first;
                auto xp = CellSet(from_bottom[e].top).prev(x);
                if (!xp || *xp < floor_x - kSlack) continue;
                auto b = CellSet(R[j]).prev(*xp);
                if (!b) continue;
                auto chk = propagate_strip(strip[e], point_row(n, *b));
                if (!CellSet(chk.top).contains(*xp)) continue;
                v = j;
                x = *b;
                moved = true;
                break;
            }
            if (!moved) throw std::logic_error("dag back pointers lost the path");
        }
        std::reverse(path.vertices.begin(), path.vertices.end());
    }
};

}  // namespace

DagMatchResult dag_match_decide(const Polyline& P, const GeometricDag& G, double eps, bool inside_edges) {
    DagSweep sw(P, G, eps, inside_edges);
    int n = sw.n;
    DagMatchResult res;
    for (int v : G.topological_order()) {
        if (!CellSet(sw.R[v]).contains(n)) continue;
        DagPath path;
        path.dag = &G;
        sw.trace(v, n, path);
        res.matched = true;
        res.path = path;
        return res;
    }
    if (!inside_edges) return res;
    for (std::size_t e = 0; e < G.edges().size(); ++e) {
        const auto& s = sw.strip[e];
        const auto& fb = sw.from_bottom[e];
        int j = G.edges()[e].first;
        DagPath path;
        path.dag = &G;
        if (fb.left_exits_right) {
            path.head = sw.on_edge(static_cast<int>(e), s.level[0]->lo);
            path.tail = sw.on_edge(static_cast<int>(e), exit_height(s, 0));
            res.matched = true;
            res.path = path;
            return res;
        }
        std::optional<double> b;
        double h = 0.0;
        for (int c = 0; c < n && !b; ++c)
            if (sw.R[j][c] && fb.exits_right[c] && sw.R[j][c]->lo < c + 1) {
                b = sw.R[j][c]->lo;
                h = exit_height(s, c + 1);
            }
        if (!b && fb.end_exits_right && CellSet(sw.R[j]).contains(n)) {
            b = static_cast<double>(n);
            h = 0.0;
        }
        if (!b) continue;
        sw.trace(j, *b, path);
        path.tail = sw.on_edge(static_cast<int>(e), h);
        res.matched = true;
        res.path = path;
        return res;
    }
    return res;
}

std::vector<CriticalValue> dag_critical_values(const Polyline& P, const GeometricDag& G) {
    std::vector<CriticalValue> out;
    for (const auto& [a, b] : G.edges()) {
        auto c = critical_values_classic(P, Polyline({G.vertex(a), G.vertex(b)}));
        out.insert(out.end(), c.begin(), c.end());
    }
    int V = G.size(), n = static_cast<int>(P.segments());
    for (int v = 0; v < V; ++v) {
        for (int i = 0; i <= n; ++i) out.push_back({dist(P.vertex(i), G.vertex(v)), CritKind::A, {i, v, -1, -1}});
        for (int i = 0; i < n; ++i)
            out.push_back({point_segment_dist(G.vertex(v), P.vertex(i), P.vertex(i + 1)), CritKind::B, {i, v, -1, -1}});
    }
    for (int u = 0; u < V; ++u)
        for (int v = u + 1; v < V; ++v)
            for (int i = 0; i < n; ++i) {
                std::vector<double> ev;
                bisector_events(G.vertex(u), G.vertex(v), P.vertex(i), P.vertex(i + 1), ev);
                for (double d : ev) out.push_back({d, CritKind::C, {u, v, i, -1}});
            }
    sort_unique(out);
    return out;
}

Optimum dag_match_optimize(const Polyline& P, const GeometricDag& G, bool inside_edges) {
    if (G.size() == 0) return {kInfD, CritKind::Bisection};
    Polyline pts(G.vertices());
    return search_critical(dag_critical_values(P, G),
                           [&](double e) { return dag_match_decide(P, G, e, inside_edges).matched; },
                           diagram_upper({&P, &pts}));
}

}  // namespace frechet
