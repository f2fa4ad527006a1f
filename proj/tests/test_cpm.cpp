#include <cmath>

#include "doctest.h"
#include "frechet/applications.hpp"
#include "frechet/cpm.hpp"
#include "frechet/oracles.hpp"
#include "support.hpp"

using namespace frechet;
using namespace testkit;

namespace {

Polyline curve_of(const std::vector<Point>& S, const std::vector<int>& seq) {
    std::vector<Point> v;
    for (int x : seq) v.push_back(S[x]);
    return Polyline(v);
}

// Reachable part of the last diagram row, as the left end per cell.
std::vector<std::optional<double>> last_row(const Polyline& P, const Polyline& Q, double eps) {
    auto g = frechet_reach(P, Q, eps);
    std::vector<std::optional<double>> lo(g.n);
    for (int i = 0; i < g.n; ++i)
        if (const auto& b = g.bottom(i, g.m)) lo[i] = b->lo;
    return lo;
}

bool dominates(const std::vector<std::optional<double>>& a, const std::vector<std::optional<double>>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] && (!a[i] || *a[i] > *b[i] + 1e-12)) return false;
    return true;
}

// Exhaustive search over vertex sequences; a prefix is dropped when its last
// row is empty or dominated by an earlier prefix that is no longer.
bool enumerate_decide(const CpmInstance& inst, int max_len) {
    bool found = false;
    struct Seen {
        std::size_t len;
        std::vector<std::optional<double>> row;
    };
    std::vector<std::vector<Seen>> seen(inst.S.size());
    enumerate_pointset_curves(
        inst.S, max_len,
        [&](const std::vector<int>& seq) {
            if (found) return false;
            if (seq.size() > 1 && seq[seq.size() - 1] == seq[seq.size() - 2]) return false;
            auto row = last_row(inst.P, curve_of(inst.S, seq), inst.eps);
            if (std::none_of(row.begin(), row.end(), [](const auto& x) { return x.has_value(); })) return false;
            auto& list = seen[seq.back()];
            for (const auto& s : list)
                if (s.len <= seq.size() && dominates(s.row, row)) return false;
            list.push_back({seq.size(), std::move(row)});
            return true;
        },
        [&](const std::vector<int>& seq) {
            if (!found && decide_frechet(inst.P, curve_of(inst.S, seq), inst.eps)) found = true;
        });
    return found;
}

CpmInstance random_instance(std::mt19937& rng, int n, int k) {
    CpmInstance inst;
    inst.P = random_curve(rng, n);
    for (int v = 0; v < k; ++v) inst.S.push_back({rand_real(rng, 0, 10), rand_real(rng, 0, 10)});
    inst.eps = guarded_eps(values(cpm_critical_values(inst.S, inst.P)), rng);
    return inst;
}

// Largest l with P from Left(P_i[u]) to Right(P_l[v]) matching the segment u->v.
std::optional<int> pointer_oracle(const CpmInstance& inst, int i, const Point& u, const Point& v) {
    auto f = segment_ball_interval(inst.P.vertex(i), inst.P.vertex(i + 1), u, inst.eps);
    if (!f) return std::nullopt;
    double a = i + f->lo;
    Polyline uv({u, v});
    std::optional<int> best;
    for (int l = i; l < inst.n(); ++l) {
        auto g = segment_ball_interval(inst.P.vertex(l), inst.P.vertex(l + 1), v, inst.eps);
        if (!g || l + g->hi < a) continue;
        if (decide_frechet(inst.P.subcurve(a, l + g->hi), uv, inst.eps)) best = l;
    }
    return best;
}

}  // namespace

TEST_SUITE("cpm") {

TEST_CASE("decision examples") {
    CpmInstance a{{{0, 0}, {1, 0}}, Polyline({{0, 0}, {1, 0}}), 0.0};
    CHECK(cpm_decide(a));
    auto q = cpm_reconstruct(a);
    REQUIRE(q);
    CHECK(q->vertices() == std::vector<Point>{{0, 0}, {1, 0}});

    CpmInstance far{{{5, 5}, {6, 6}}, Polyline({{0, 0}, {1, 0}}), 1.0};
    CHECK_FALSE(cpm_decide(far));
    CHECK_FALSE(cpm_reconstruct(far));

    CpmInstance one{{{0.5, 0.5}}, Polyline({{0, 0}, {1, 0}, {1, 1}}), 0.75};
    auto q1 = cpm_reconstruct(one);
    REQUIRE(q1);
    for (const auto& p : q1->vertices()) CHECK(p == Point{0.5, 0.5});

    CpmInstance reuse{{{0, 0}, {4, 0}}, Polyline({{0, 0}, {4, 0}, {0, 0.5}}), 0.6};
    auto idx = cpm_reconstruct_indices(reuse);
    REQUIRE(idx);
    CHECK(*idx == std::vector<int>{0, 1, 0});

    CpmInstance bad{{}, Polyline({{0, 0}, {1, 0}}), 1.0};
    CHECK_THROWS_AS(cpm_decide(bad), ContractError);
}

TEST_CASE("reach pointer examples") {
    Polyline P({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
    CpmInstance inst{{}, P, 0.4};
    Point u{2.0, 0.3};
    auto r = reach_pointers(u, u, inst);
    CHECK_FALSE(r[0]);
    REQUIRE(r[1]);
    CHECK(*r[1] == 2);
    REQUIRE(r[2]);
    CHECK(*r[2] == 2);
    CHECK_FALSE(r[3]);
    auto s = reach_pointers({0.0, 0.0}, {4.0, 0.0}, inst);
    REQUIRE(s[0]);
    CHECK(*s[0] == 3);
}

TEST_CASE("reach pointers against the per-pair oracle") {
    std::mt19937 rng(61);
    int checked = 0;
    for (int rep = 0; rep < 150; ++rep) {
        auto inst = random_instance(rng, rand_int(rng, 1, 6), 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                auto r = reach_pointers(inst.S[a], inst.S[b], inst);
                for (int i = 0; i < inst.n(); ++i) {
                    auto o = pointer_oracle(inst, i, inst.S[a], inst.S[b]);
                    CHECK(r[i] == o);
                    checked += o.has_value();
                }
            }
    }
    CHECK(checked > 100);
}

TEST_CASE("decision against curve enumeration") {
    std::mt19937 rng(62);
    int yes = 0, total = 0;
    for (int rep = 0; rep < 150; ++rep) {
        int n = rand_int(rng, 1, 5), k = rand_int(rng, 1, 6);
        auto inst = random_instance(rng, n, k);
        bool got = cpm_decide(inst);
        CHECK(got == enumerate_decide(inst, std::min(12, 2 * n)));
        yes += got;
        ++total;
    }
    CHECK(yes > 30);
    CHECK(total - yes > 30);
}

TEST_CASE("reconstructed curves verify") {
    std::mt19937 rng(63);
    int built = 0;
    for (int rep = 0; rep < 300; ++rep) {
        int n = rand_int(rng, 1, 6), k = rand_int(rng, 1, 7);
        auto inst = random_instance(rng, n, k);
        auto idx = cpm_reconstruct_indices(inst);
        CHECK(idx.has_value() == cpm_decide(inst));
        if (!idx) continue;
        ++built;
        CHECK(idx->size() <= static_cast<std::size_t>(2 * std::min(n, k) + 2));
        CHECK(decide_frechet(inst.P, curve_of(inst.S, *idx), inst.eps));
    }
    CHECK(built > 50);
}

TEST_CASE("reach pointers cross into reachable cylinders") {
    std::mt19937 rng(64);
    for (int rep = 0; rep < 150; ++rep) {
        auto inst = random_instance(rng, rand_int(rng, 1, 6), rand_int(rng, 1, 5));
        auto st = cpm_reach(inst);
        for (int u = 0; u < inst.k(); ++u)
            for (int v = 0; v < inst.k(); ++v) {
                auto r = reach_pointers(inst.S[u], inst.S[v], inst);
                for (int i = 0; i < inst.n(); ++i) {
                    if (!r[i] || !st.reachable(i, u)) continue;
                    for (int j = i + 1; j <= *r[i]; ++j)
                        if (inst.in_cylinder(j, v)) CHECK(st.reachable(j, v));
                    auto own = inst.part(i, v);
                    if (own && own->hi >= *st.pos[i][u]) CHECK(st.reachable(i, v));
                }
            }
    }
}

TEST_CASE("optimum examples") {
    Polyline P({{0, 0}, {3, 1}, {5, -2}});
    auto o = cpm_optimize(P.vertices(), P);
    CHECK(o.value == doctest::Approx(0.0));
    Point p{1, 1};
    auto s = cpm_optimize({p}, P);
    double far = 0.0;
    for (const auto& v : P.vertices()) far = std::max(far, dist(p, v));
    CHECK(s.value == doctest::Approx(far).epsilon(1e-9));
}

TEST_CASE("optimum against bisection") {
    std::mt19937 rng(65);
    for (int rep = 0; rep < 60; ++rep) {
        auto inst = random_instance(rng, rand_int(rng, 1, 5), rand_int(rng, 1, 5));
        auto opt = cpm_optimize(inst.S, inst.P);
        auto dec = [&](double e) {
            inst.eps = e;
            return cpm_decide(inst);
        };
        double ref = bisect_decision(dec, 0.0, 40.0, 1e-10);
        CHECK(std::fabs(opt.value - ref) <= 1e-6);
        CHECK(dec(opt.value));
    }
}

TEST_CASE("dag matching on the layered complete dag agrees") {
    std::mt19937 rng(66);
    for (int rep = 0; rep < 100; ++rep) {
        int n = rand_int(rng, 1, 4), k = rand_int(rng, 1, 4);
        auto inst = random_instance(rng, n, k);
        auto G = layered_complete_dag(inst.S, 2 * n + 2);
        CHECK(dag_match_decide(inst.P, G, inst.eps).matched == cpm_decide(inst));
    }
}

}
