#include "frechet/cpm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frechet/fsmap.hpp"

namespace frechet {

namespace {

constexpr double kSlack = 1e-12;

struct PairStrip {
    std::vector<OptInterval> top;
    std::vector<std::optional<double>> rp;
};

PairStrip pair_strip(const Polyline& P, const Point& u, const Point& v, double eps) {
    FreeSpace fs(P, Polyline({u, v}), eps);
    Strip s = map_strip(fs, 0);
    auto r = propagate_strip(s, std::vector<OptInterval>(s.cells()));
    return {std::move(s.top), std::move(r.rp)};
}

// Last cylinder whose part of the top row starts at or before r.
int last_cylinder(const std::vector<OptInterval>& top, double r) {
    int n = static_cast<int>(top.size());
    int f = static_cast<int>(std::floor(r + kSlack));
    if (f >= n) return n - 1;
    if (top[f] && top[f]->lo <= r + kSlack) return f;
    return f - 1;
}

std::vector<int> furthest(const PairStrip& ps) {
    std::vector<int> out(ps.rp.size(), -1);
    for (std::size_t i = 0; i < ps.rp.size(); ++i)
        if (ps.rp[i]) out[i] = last_cylinder(ps.top, *ps.rp[i]);
    return out;
}

}  // namespace

OptInterval CpmInstance::part(int i, int v) const {
    auto f = segment_ball_interval(P.vertex(i), P.vertex(i + 1), S[v], eps);
    if (!f) return std::nullopt;
    return Interval{i + f->lo, i + f->hi};
}

void validate(const CpmInstance& inst) {
    if (inst.S.empty()) throw ContractError("pointset must not be empty");
    if (inst.P.vertices().empty()) throw ContractError("curve must not be empty");
    if (!(inst.eps >= 0.0)) throw ContractError("eps must be non-negative");
    for (const auto& p : inst.S)
        if (p.size() != inst.P.dim()) throw ContractError("pointset dimension differs from curve");
}

std::vector<std::optional<int>> reach_pointers(const Point& u, const Point& v, const CpmInstance& inst) {
    int n = inst.n();
    auto ps = pair_strip(inst.P, u, v, inst.eps);
    CellSet ftop(ps.top);
    std::vector<std::optional<int>> out(n);
    for (int i = 0; i < n; ++i) {
        auto f = segment_ball_interval(inst.P.vertex(i), inst.P.vertex(i + 1), u, inst.eps);
        if (!f || !ps.rp[i]) continue;
        auto lp = ftop.next(i + f->lo);
        if (!lp || *lp > *ps.rp[i] + kSlack) continue;
        int b = last_cylinder(ps.top, *ps.rp[i]);
        if (b >= i) out[i] = b;
    }
    return out;
}

ReachState cpm_reach(const CpmInstance& inst) {
    validate(inst);
    int n = inst.n(), k = inst.k();
    ReachState st;
    st.n = n;
    st.k = k;
    st.pos.assign(n, std::vector<std::optional<double>>(k));
    st.back.assign(n, std::vector<ReachState::Back>(k));
    std::vector<std::vector<OptInterval>> part(n, std::vector<OptInterval>(k));
    for (int i = 0; i < n; ++i)
        for (int v = 0; v < k; ++v) part[i][v] = inst.part(i, v);
    std::vector<std::vector<std::vector<int>>> far(k, std::vector<std::vector<int>>(k));
    for (int u = 0; u < k; ++u)
        for (int v = 0; v < k; ++v) far[u][v] = furthest(pair_strip(inst.P, inst.S[u], inst.S[v], inst.eps));

    struct Cover {
        int upto = -1;
        ReachState::Back src;
    };
    std::vector<Cover> cover(k);
    std::vector<std::vector<Cover>> pend(n + 1, std::vector<Cover>(k));
    for (int v = 0; v < k; ++v)
        if (within(dist2(inst.S[v], inst.P.vertex(0)), inst.eps) && part[0][v]) {
            st.pos[0][v] = 0.0;
            st.back[0][v] = {ReachState::Start, -1, -1};
        }
    for (int i = 0; i < n; ++i) {
        auto& pos = st.pos[i];
        for (int v = 0; v < k; ++v) {
            if (pend[i][v].upto > cover[v].upto) cover[v] = pend[i][v];
            if (cover[v].upto < i || !part[i][v]) continue;
            double x = part[i][v]->lo;
            if (!pos[v] || x < *pos[v]) {
                pos[v] = x;
                st.back[i][v] = cover[v].src;
            }
        }
        int umin = -1;
        for (int v = 0; v < k; ++v)
            if (pos[v] && (umin < 0 || *pos[v] < *pos[umin])) umin = v;
        if (umin < 0) continue;
        double q = *pos[umin];
        for (int w = 0; w < k; ++w) {
            if (!part[i][w] || part[i][w]->hi < q - kSlack) continue;
            double x = std::max(q, part[i][w]->lo);
            if (!pos[w] || x < *pos[w]) {
                pos[w] = x;
                st.back[i][w] = {ReachState::Hop, i, umin};
            }
        }
        for (int u = 0; u < k; ++u) {
            if (!pos[u]) continue;
            for (int v = 0; v < k; ++v) {
                int b = far[u][v][i];
                if (b > i && b > pend[i + 1][v].upto) pend[i + 1][v] = {b, {ReachState::Strip, i, u}};
            }
        }
    }
    for (int v = 0; v < k; ++v)
        if (st.pos[n - 1][v] && within(dist2(inst.S[v], inst.P.vertex(n)), inst.eps)) {
            st.accept = v;
            break;
        }
    return st;
}

bool cpm_decide(const CpmInstance& inst) { return cpm_reach(inst).accept >= 0; }

namespace {

Polyline curve_of(const std::vector<Point>& S, const std::vector<int>& idx) {
    std::vector<Point> pts;
    for (int x : idx) pts.push_back(S[x]);
    return Polyline(std::move(pts));
}

}  // namespace

std::optional<std::vector<int>> cpm_reconstruct_indices(const CpmInstance& inst) {
    auto st = cpm_reach(inst);
    if (st.accept < 0) return std::nullopt;
    std::vector<int> rev;
    int i = inst.n() - 1, v = st.accept;
    while (true) {
        rev.push_back(v);
        const auto& b = st.back[i][v];
        if (b.via == ReachState::Start) break;
        i = b.cyl;
        v = b.from;
    }
    std::vector<int> seq;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        if (seq.empty() || seq.back() != *it) seq.push_back(*it);
    std::size_t bound = 2 * static_cast<std::size_t>(std::min(inst.n(), inst.k())) + 2;
    for (std::size_t r = 0; seq.size() > bound && r < seq.size();) {
        auto trial = seq;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(r));
        if (decide_frechet(inst.P, curve_of(inst.S, trial), inst.eps)) seq = std::move(trial);
        else ++r;
    }
    return seq;
}

std::optional<Polyline> cpm_reconstruct(const CpmInstance& inst) {
    auto idx = cpm_reconstruct_indices(inst);
    if (!idx) return std::nullopt;
    return curve_of(inst.S, *idx);
}

std::vector<CriticalValue> cpm_critical_values(const std::vector<Point>& S, const Polyline& P) {
    int n = static_cast<int>(P.segments()), k = static_cast<int>(S.size());
    std::vector<CriticalValue> out;
    std::vector<double> ts;
    for (int u = 0; u < k; ++u) {
        for (int i = 0; i <= n; ++i) out.push_back({dist(S[u], P.vertex(i)), CritKind::A, {u, i, -1, -1}});
        for (int i = 0; i < n; ++i)
            out.push_back({point_segment_dist(S[u], P.vertex(i), P.vertex(i + 1)), CritKind::B, {u, i, -1, -1}});
    }
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) {
            for (int i = 0; i < n; ++i) {
                ts.clear();
                bisector_events(S[u], S[v], P.vertex(i), P.vertex(i + 1), ts);
                for (double t : ts)
                    out.push_back({dist(S[u], lerp(P.vertex(i), P.vertex(i + 1), t)), CritKind::C, {u, v, i, -1}});
            }
            for (int a = 0; a <= n; ++a)
                out.push_back({point_segment_dist(P.vertex(a), S[u], S[v]), CritKind::B, {u, v, a, -1}});
            for (int a = 0; a <= n; ++a)
                for (int b = a + 1; b <= n; ++b) {
                    ts.clear();
                    bisector_events(P.vertex(a), P.vertex(b), S[u], S[v], ts);
                    for (double t : ts) out.push_back({dist(P.vertex(a), lerp(S[u], S[v], t)), CritKind::C, {u, v, a, b}});
                }
        }
    return out;
}

Optimum cpm_optimize(const std::vector<Point>& S, const Polyline& P) {
    CpmInstance inst{S, P, 0.0};
    validate(inst);
    Polyline cloud(S);
    double upper = 2.0 * bbox_diagonal({&P, &cloud}) + 1.0;
    return search_critical(cpm_critical_values(S, P),
                           [&](double e) {
                               inst.eps = e;
                               return cpm_decide(inst);
                           },
                           upper);
}

}  // namespace frechet
