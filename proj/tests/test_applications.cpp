#include <cmath>
#include <functional>

#include "doctest.h"
#include "frechet/applications.hpp"
#include "frechet/oracles.hpp"
#include "support.hpp"

using namespace frechet;
using namespace testkit;

namespace {

// Every feasible-interval endpoint on every row, plus the vertex parameters.
std::vector<double> row_breakpoints(const Polyline& P, const Polyline& Q, double eps) {
    FreeSpace fs(P, Q, eps);
    std::vector<double> x;
    for (int c = 0; c <= fs.n(); ++c) x.push_back(c);
    for (int j = 0; j <= fs.m(); ++j)
        for (int c = 0; c < fs.n(); ++c)
            if (const auto& v = fs.bf(c, j)) x.insert(x.end(), {c + v->lo, c + v->hi});
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

struct PairScan {
    bool any = false;
    double max_len = -1.0, min_len = 1e300;
};

PairScan scan_pairs(const Polyline& P, const Polyline& Q, double eps) {
    auto X = row_breakpoints(P, Q, eps);
    PairScan out;
    for (std::size_t a = 0; a < X.size(); ++a)
        for (std::size_t b = a; b < X.size(); ++b) {
            if (!decide_frechet(P.subcurve(X[a], X[b]), Q, eps)) continue;
            double len = P.arclen(X[b]) - P.arclen(X[a]);
            out.any = true;
            out.max_len = std::max(out.max_len, len);
            out.min_len = std::min(out.min_len, len);
        }
    return out;
}

bool sampled_partial(const Polyline& P, const Polyline& Q, double eps, int r) {
    SampledFreeSpace sf(P, Q, eps, r);
    for (int a = 0; a < sf.w; ++a) {
        if (!sf.at(a, 0)) continue;
        auto top = grid_reach_from(sf, a);
        if (std::find(top.begin(), top.end(), 1) != top.end()) return true;
    }
    return false;
}

Polyline random_closed(std::mt19937& rng, int segs) {
    auto C = random_curve(rng, segs - 1);
    auto v = C.vertices();
    v.push_back(v.front());
    return Polyline(v);
}

bool closed_oracle(const Polyline& P, const Polyline& Q, double eps, bool& scan_hit) {
    auto P2 = double_closed_curve(P);
    double n = P.segments();
    scan_hit = false;
    for (int s = 0; s < 200 && !scan_hit; ++s) {
        double t = n * s / 200.0;
        scan_hit = decide_frechet(P2.subcurve(t, t + n), Q, eps);
    }
    for (double x : row_breakpoints(P2, Q, eps))
        for (double t : {x, x - n})
            if (t >= 0 && t <= n && decide_frechet(P2.subcurve(t, t + n), Q, eps)) return true;
    return false;
}

void all_paths(const GeometricDag& G, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<std::vector<int>> out(G.size());
    for (const auto& [a, b] : G.edges()) out[a].push_back(b);
    std::vector<int> cur;
    std::function<void(int)> go = [&](int v) {
        cur.push_back(v);
        visit(cur);
        for (int w : out[v]) go(w);
        cur.pop_back();
    };
    for (int v = 0; v < G.size(); ++v) go(v);
}

Polyline path_curve(const GeometricDag& G, const std::vector<int>& p) {
    std::vector<Point> v;
    for (int x : p) v.push_back(G.vertex(x));
    if (v.size() == 1) v.push_back(v.front());
    return Polyline(v);
}

GeometricDag random_dag(std::mt19937& rng, int V) {
    std::vector<Point> pts;
    for (int k = 0; k < V; ++k) pts.push_back({rand_real(rng, 0, 10), rand_real(rng, 0, 10)});
    std::vector<int> perm(V);
    for (int k = 0; k < V; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < V; ++a)
        for (int b = a + 1; b < V; ++b)
            if (rand_int(rng, 0, 2) != 0) edges.push_back({perm[a], perm[b]});
    return GeometricDag(pts, edges);
}

std::vector<double> dag_gaps(const Polyline& P, const GeometricDag& G) { return values(dag_critical_values(P, G)); }

}  // namespace

TEST_SUITE("applications") {

TEST_CASE("partial matching examples") {
    std::mt19937 rng(31);
    auto P = random_curve(rng, 6);
    auto Q = P.subcurve(1.3, 4.6);
    auto w = partial_match(P, Q, 0.0);
    REQUIRE(w);
    CHECK(decide_frechet(P.subcurve(w->start, w->end), Q, 1e-9));
    Polyline A({{0, 0}, {10, 0}}), B({{5, 3}, {6, 3}});
    CHECK_FALSE(partial_match_decide(A, B, 2.9));
    CHECK(partial_match_decide(A, B, 3.0));
}

TEST_CASE("partial matching against pair enumeration") {
    std::mt19937 rng(32);
    int yes = 0;
    for (int rep = 0; rep < 120; ++rep) {
        auto P = random_curve(rng, rand_int(rng, 1, 6)), Q = random_curve(rng, rand_int(rng, 1, 4));
        double eps = guarded_eps(values(critical_values_classic(P, Q)), rng);
        auto w = partial_match(P, Q, eps);
        auto scan = scan_pairs(P, Q, eps);
        CHECK(w.has_value() == scan.any);
        CHECK(partial_match_decide(P, Q, eps) == scan.any);
        if (rep < 40 && sampled_partial(P, Q, eps, 32)) CHECK(w.has_value());
        if (!w) continue;
        ++yes;
        CHECK(decide_frechet(P.subcurve(w->start, w->end), Q, eps));
    }
    CHECK(yes > 20);
}

TEST_CASE("partial matching optimum") {
    std::mt19937 rng(33);
    for (int rep = 0; rep < 30; ++rep) {
        auto P = random_curve(rng, rand_int(rng, 1, 5)), Q = random_curve(rng, rand_int(rng, 1, 4));
        auto opt = partial_match_optimize(P, Q);
        CHECK(partial_match_decide(P, Q, opt.value));
        CHECK_FALSE(partial_match_decide(P, Q, opt.value * (1 - 1e-9) - 1e-12));
        CHECK(opt.value <= compute_frechet(P, Q).value + 1e-9);
    }
}

TEST_CASE("closed curve examples") {
    Polyline sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
    Polyline rot({{1, 1}, {0, 1}, {0, 0}, {1, 0}, {1, 1}});
    CHECK(closed_frechet_decide(sq, sq, 0.0));
    auto t = closed_frechet_shift(rot, sq, 1e-9);
    REQUIRE(t);
    CHECK(*t == doctest::Approx(2.0));
    Polyline in({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1}}), out({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}, {-2, -2}});
    // the outer corners sit sqrt(2) away from the inner square
    CHECK_FALSE(closed_frechet_decide(in, out, 1.0));
    CHECK(closed_frechet_decide(in, out, std::sqrt(2.0) + 1e-9));
    CHECK(closed_frechet_optimize(in, out).value == doctest::Approx(std::sqrt(2.0)));
    Polyline open({{0, 0}, {1, 0}});
    CHECK_THROWS_AS(closed_frechet_decide(open, sq, 1.0), ContractError);
    CHECK_THROWS_AS(closed_frechet_decide(sq, open, 1.0), ContractError);
}

TEST_CASE("closed curves against the shift scan") {
    std::mt19937 rng(34);
    int yes = 0;
    for (int rep = 0; rep < 120; ++rep) {
        auto P = random_closed(rng, rand_int(rng, 2, 5)), Q = random_closed(rng, rand_int(rng, 2, 4));
        double eps = guarded_eps(values(critical_values_classic(double_closed_curve(P), Q)), rng);
        bool scan_hit = false;
        bool want = closed_oracle(P, Q, eps, scan_hit);
        auto t = closed_frechet_shift(P, Q, eps);
        CHECK(t.has_value() == want);
        if (scan_hit) CHECK(t.has_value());
        if (!t) continue;
        ++yes;
        double n = P.segments();
        CHECK(*t >= 0.0);
        CHECK(*t < n);
        CHECK(decide_frechet(double_closed_curve(P).subcurve(*t, *t + n), Q, eps));
    }
    CHECK(yes > 20);
}

TEST_CASE("closed curve optimum") {
    std::mt19937 rng(35);
    for (int rep = 0; rep < 20; ++rep) {
        auto P = random_closed(rng, rand_int(rng, 2, 4)), Q = random_closed(rng, rand_int(rng, 2, 4));
        auto opt = closed_frechet_optimize(P, Q);
        CHECK(closed_frechet_decide(P, Q, opt.value));
        CHECK_FALSE(closed_frechet_decide(P, Q, opt.value * (1 - 1e-9) - 1e-12));
    }
}

TEST_CASE("walk examples") {
    std::mt19937 rng(36);
    auto P = random_curve(rng, 5);
    auto mx = max_walk(P, P, 0.0), mn = min_walk(P, P, 0.0);
    REQUIRE(mx);
    REQUIRE(mn);
    CHECK(mx->length == doctest::Approx(P.length()));
    CHECK(mn->length == doctest::Approx(P.length()));
    auto Q = random_curve(rng, 3, 4.0, 6.0);
    auto big_max = max_walk(P, Q, 100.0), big_min = min_walk(P, Q, 100.0);
    CHECK(big_max->length == doctest::Approx(P.length()));
    CHECK(big_min->length == 0.0);
    Polyline A({{0, 0}, {10, 0}}), B({{5, 3}, {6, 3}});
    CHECK_FALSE(max_walk(A, B, 1.0));
    CHECK_FALSE(min_walk(A, B, 1.0));
}

TEST_CASE("max and min walk against pair enumeration") {
    std::mt19937 rng(37);
    int yes = 0;
    for (int rep = 0; rep < 120; ++rep) {
        auto P = random_curve(rng, rand_int(rng, 1, 6)), Q = random_curve(rng, rand_int(rng, 1, 4));
        double eps = guarded_eps(values(critical_values_classic(P, Q)), rng);
        auto scan = scan_pairs(P, Q, eps);
        auto mx = max_walk(P, Q, eps), mn = min_walk(P, Q, eps);
        CHECK(mx.has_value() == scan.any);
        CHECK(mn.has_value() == scan.any);
        if (!scan.any || !mx || !mn) continue;
        ++yes;
        CHECK(mx->length == doctest::Approx(scan.max_len).epsilon(1e-9));
        CHECK(mn->length == doctest::Approx(scan.min_len).epsilon(1e-9));
        CHECK(decide_frechet(P.subcurve(mx->start, mx->end), Q, eps));
        CHECK(decide_frechet(P.subcurve(mn->start, mn->end), Q, eps));
    }
    CHECK(yes > 20);
}

TEST_CASE("dag construction") {
    CHECK_THROWS_AS(GeometricDag({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}), ContractError);
    CHECK_THROWS_AS(GeometricDag({{0, 0}}, {{0, 0}}), ContractError);
    CHECK_THROWS_AS(GeometricDag({{0, 0}}, {{0, 3}}), ContractError);
    GeometricDag G({{0, 0}, {1, 0}, {2, 0}}, {{2, 1}, {1, 0}});
    auto ord = G.topological_order();
    CHECK(ord == std::vector<int>{2, 1, 0});
    auto L = layered_complete_dag({{0, 0}, {1, 1}}, 3);
    CHECK(L.size() == 6);
    CHECK(L.edges().size() == 8);
}

TEST_CASE("dag matching on the path graph of P") {
    std::mt19937 rng(38);
    auto P = random_curve(rng, 5);
    std::vector<std::pair<int, int>> edges;
    for (int k = 0; k < 5; ++k) edges.push_back({k, k + 1});
    GeometricDag G(P.vertices(), edges);
    auto r = dag_match_decide(P, G, 0.0);
    REQUIRE(r.matched);
    CHECK(r.path->vertices == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(dag_match_optimize(P, G).value == doctest::Approx(0.0));
}

TEST_CASE("dag matching against path enumeration") {
    std::mt19937 rng(39);
    int yes = 0;
    for (int rep = 0; rep < 120; ++rep) {
        auto P = random_curve(rng, rand_int(rng, 1, 5));
        auto G = random_dag(rng, rand_int(rng, 1, 6));
        double eps = guarded_eps(dag_gaps(P, G), rng);
        bool want = false;
        all_paths(G, [&](const std::vector<int>& p) { want = want || decide_frechet(P, path_curve(G, p), eps); });
        auto r = dag_match_decide(P, G, eps);
        CHECK(r.matched == want);
        if (!r.matched) continue;
        ++yes;
        REQUIRE(r.path);
        const auto& vs = r.path->vertices;
        for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
            bool edge = false;
            for (const auto& e : G.edges()) edge = edge || (e.first == vs[k] && e.second == vs[k + 1]);
            CHECK(edge);
        }
        CHECK(decide_frechet(P, r.path->curve(), eps));
    }
    CHECK(yes > 20);
}

TEST_CASE("dag matching inside edges") {
    Polyline P({{2, 0}, {8, 0}});
    GeometricDag G({{0, 0.5}, {10, 0.5}}, {{0, 1}});
    CHECK_FALSE(dag_match_decide(P, G, 1.0).matched);
    auto r = dag_match_decide(P, G, 1.0, true);
    REQUIRE(r.matched);
    CHECK(decide_frechet(P, r.path->curve(), 1.0));

    std::mt19937 rng(40);
    int upgraded = 0;
    for (int rep = 0; rep < 100; ++rep) {
        auto Pr = random_curve(rng, rand_int(rng, 1, 4));
        auto Gr = random_dag(rng, rand_int(rng, 2, 5));
        double eps = guarded_eps(dag_gaps(Pr, Gr), rng);
        auto plain = dag_match_decide(Pr, Gr, eps);
        auto edge = dag_match_decide(Pr, Gr, eps, true);
        if (plain.matched) CHECK(edge.matched);
        if (edge.matched) {
            CHECK(decide_frechet(Pr, edge.path->curve(), eps));
            upgraded += !plain.matched;
        }
        // sampled subsegments of single edges are valid witnesses too
        for (const auto& [a, b] : Gr.edges())
            for (int s = 0; s <= 4; ++s)
                for (int t = s; t <= 4; ++t) {
                    Polyline seg({lerp(Gr.vertex(a), Gr.vertex(b), s / 4.0), lerp(Gr.vertex(a), Gr.vertex(b), t / 4.0)});
                    if (decide_frechet(Pr, seg, eps)) CHECK(edge.matched);
                }
    }
    CHECK(upgraded > 0);
}

TEST_CASE("dag optimum") {
    std::mt19937 rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        auto P = random_curve(rng, rand_int(rng, 1, 4));
        auto G = random_dag(rng, rand_int(rng, 1, 5));
        auto opt = dag_match_optimize(P, G);
        CHECK(dag_match_decide(P, G, opt.value).matched);
        CHECK_FALSE(dag_match_decide(P, G, opt.value * (1 - 1e-9) - 1e-12).matched);
        double best = 1e300;
        all_paths(G, [&](const std::vector<int>& p) { best = std::min(best, compute_frechet(P, path_curve(G, p)).value); });
        CHECK(opt.value == doctest::Approx(best).epsilon(1e-7));
    }
}

}
