#include "frechet/speed.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace frechet {

SpeedProfiles SpeedProfiles::unconstrained(std::size_t n, std::size_t m) {
    SpeedProfiles p;
    p.P.assign(n, SpeedLimit{});
    p.Q.assign(m, SpeedLimit{});
    return p;
}

TravelTimes::TravelTimes(const Polyline& C, const std::vector<SpeedLimit>& lim, bool use_max) {
    int n = static_cast<int>(C.segments());
    tau_.resize(n);
    F_.assign(n + 1, 0.0);
    Z_.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) {
        double v = use_max ? lim[k].vmax : lim[k].vmin;
        double len = C.seg_length(k);
        double t;
        if (v == kInf) t = 0.0;
        else if (v <= 0.0) t = kInf;
        else t = len / v;
        tau_[k] = t;
        F_[k + 1] = F_[k] + (t == kInf ? 0.0 : t);
        Z_[k + 1] = Z_[k] + (t == kInf ? 1 : 0);
    }
}

double TravelTimes::time(double a, double b) const {
    if (b <= a) return 0.0;
    int n = segments();
    int ka = std::min(static_cast<int>(std::floor(a)), n - 1);
    int kb = std::max(ka, std::min(static_cast<int>(std::ceil(b)) - 1, n - 1));
    if (ka == kb) return tau_[ka] == kInf ? kInf : (b - a) * tau_[ka];
    if (Z_[kb + 1] - Z_[ka] > 0) return kInf;
    return (ka + 1 - a) * tau_[ka] + (F_[kb] - F_[ka + 1]) + (b - kb) * tau_[kb];
}

double TravelTimes::vertex_time(int a, int b) const { return time(a, b); }

SpeedModel::SpeedModel(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof) : P_(&P), Q_(&Q) {
    auto check = [](const Polyline& C, const std::vector<SpeedLimit>& lim, const char* name) {
        if (lim.size() != C.segments())
            throw ContractError(std::string("speed profile for ") + name + " must have one entry per segment");
        for (std::size_t k = 0; k < lim.size(); ++k) {
            const auto& s = lim[k];
            if (!(s.vmin >= 0.0) || !std::isfinite(s.vmin) || !(s.vmax >= s.vmin))
                throw ContractError(std::string("invalid speed window on ") + name + " segment " + std::to_string(k));
            if (C.seg_length(k) == 0.0 && !(s.vmin == 0.0 && s.vmax == kInf))
                throw ContractError(std::string("zero-length segment with speed limits on ") + name);
        }
    };
    check(P, prof.P, "P");
    check(Q, prof.Q, "Q");
    auto fill = [this](const Polyline& C, const std::vector<SpeedLimit>& lim, std::vector<double>& umin,
                       std::vector<double>& umax) {
        for (std::size_t k = 0; k < lim.size(); ++k) {
            double len = C.seg_length(k);
            if (len == 0.0) {
                umin.push_back(0.0);
                umax.push_back(kInf);
                continue;
            }
            umin.push_back(lim[k].vmin / len);
            umax.push_back(lim[k].vmax == kInf ? kInf : lim[k].vmax / len);
            if (lim[k].vmax <= 0.0) blocked_ = true;
        }
    };
    fill(P, prof.P, upmin_, upmax_);
    fill(Q, prof.Q, uqmin_, uqmax_);
    pslow_ = TravelTimes(P, prof.P, false);
    pfast_ = TravelTimes(P, prof.P, true);
    qslow_ = TravelTimes(Q, prof.Q, false);
    qfast_ = TravelTimes(Q, prof.Q, true);
}

double SpeedModel::min_slope(int i, int j) const {
    if (upmax_[i] == kInf || uqmin_[j] == 0.0) return 0.0;
    return uqmin_[j] / upmax_[i];
}

double SpeedModel::max_slope(int i, int j) const {
    if (upmin_[i] == 0.0 || uqmax_[j] == kInf) return kInf;
    return uqmax_[j] / upmin_[i];
}

namespace {

// Position along the moving curve when the other curve reaches its target line.
Projection project_generic(const TravelTimes& mover, const TravelTimes& other, double pm, double po, double line,
                           int e0, int nmover) {
    Projection out;
    auto snap = [](double v) { return std::fabs(v - std::round(v)) <= 1e-10 ? std::round(v) : v; };
    pm = snap(pm);
    po = snap(po);
    if (po > line) {
        out.pos = ProjPos::After;
        return out;
    }
    double T = other.time(po, line);
    if (T == kInf) {
        out.pos = ProjPos::Before;
        return out;
    }
    if (pm > e0 + 1) {
        out.pos = ProjPos::After;
        return out;
    }
    double t1 = pm >= e0 ? 0.0 : mover.time(pm, e0);
    if (t1 > T) {
        out.pos = ProjPos::Before;
        return out;
    }
    double t2 = mover.time(pm, e0 + 1);
    double base = std::max(pm, static_cast<double>(e0));
    out.pos = ProjPos::On;
    if (t2 > T) {
        double tau = mover.tau(e0);
        double x = tau == kInf ? base : base + (T - t1) / tau;
        out.at.x = std::min(x, static_cast<double>(e0 + 1));
        return out;
    }
    out.at.x = e0 + 1;
    if (e0 + 1 >= nmover) return out;
    double tn = mover.tau(e0 + 1);
    if (tn == kInf) return out;
    if (tn == 0.0 || T > t2) out.pos = ProjPos::After;
    return out;
}

}  // namespace

Projection min_max_projection(const SpeedModel& sm, DiagPoint p, DiagEdge e, ProjDir dir) {
    const auto& tp = sm.p_times(dir);
    const auto& tq = sm.q_times(dir);
    if (e.horizontal) {
        Projection r = project_generic(tp, tq, p.x, p.y, e.j, e.i, sm.n());
        r.at.y = e.j;
        return r;
    }
    Projection r = project_generic(tq, tp, p.y, p.x, e.i, e.j, sm.m());
    r.at.y = r.at.x;
    r.at.x = e.i;
    return r;
}

double ray_exit(double s, double slope) {
    double px, py;
    if (s <= 1.0) {
        px = 0.0;
        py = 1.0 - s;
    } else {
        px = s - 1.0;
        py = 0.0;
    }
    if (slope == kInf) return px;
    if (slope == 0.0) return 2.0 - py;
    double xt = px + (1.0 - py) / slope;
    if (xt <= 1.0) return xt;
    double y = std::min(1.0, py + slope * (1.0 - px));
    return 2.0 - y;
}

Interval project_interval(Interval entry, double minS, double maxS) {
    return Interval{ray_exit(entry.lo, maxS), ray_exit(entry.hi, minS)};
}

namespace {

constexpr double kSlack = 1e-12;

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& x : v) {
        if (!out.empty() && x.lo <= out.back().hi + kSlack) out.back().hi = std::max(out.back().hi, x.hi);
        else out.push_back(x);
    }
    return out;
}

std::vector<Interval> exit_feasible(const FreeSpace& fs, int i, int j) {
    std::vector<Interval> g;
    if (const auto& t = fs.bf(i, j + 1)) g.push_back({t->lo, t->hi});
    if (const auto& r = fs.lf(i + 1, j)) g.push_back({2.0 - r->hi, 2.0 - r->lo});
    return g;
}

void clip_to_sides(const std::vector<Interval>& pieces, const FreeSpace& fs, int i, int j,
                   std::vector<Interval>& top, std::vector<Interval>& right) {
    const auto& t = fs.bf(i, j + 1);
    const auto& r = fs.lf(i + 1, j);
    for (const auto& p : pieces) {
        if (t) {
            double lo = std::max(p.lo, t->lo), hi = std::min(p.hi, t->hi);
            if (lo <= hi + kSlack) top.push_back({lo, std::max(lo, hi)});
        }
        if (r) {
            double lo = std::max(p.lo, 2.0 - r->hi), hi = std::min(p.hi, 2.0 - r->lo);
            if (lo <= hi + kSlack) right.push_back({lo, std::max(lo, hi)});
        }
    }
}

}  // namespace

bool decide_speed_simple(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof, double eps,
                         std::vector<SpeedCellTrace>* trace) {
    SpeedModel sm(P, Q, prof);
    if (sm.blocked()) return false;
    if (!within(dist2(P.vertex(0), Q.vertex(0)), eps)) return false;
    FreeSpace fs(P, Q, eps);
    int n = fs.n(), m = fs.m();
    std::vector<std::vector<Interval>> LR(static_cast<std::size_t>(n + 1) * m), BR(static_cast<std::size_t>(n) * (m + 1));
    auto li = [m](int i, int j) { return static_cast<std::size_t>(i) * m + j; };
    auto bi = [m](int i, int j) { return static_cast<std::size_t>(i) * (m + 1) + j; };
    bool accept = false;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) {
            std::vector<Interval> entry;
            if (i == 0 && j == 0) entry.push_back({1.0, 1.0});
            for (const auto& a : LR[li(i, j)]) entry.push_back({1.0 - a.hi, 1.0 - a.lo});
            for (const auto& b : BR[bi(i, j)]) entry.push_back({1.0 + b.lo, 1.0 + b.hi});
            entry = merge_intervals(entry);
            if (entry.empty()) continue;
            double lo = sm.min_slope(i, j), hi = sm.max_slope(i, j);
            std::vector<Interval> proj;
            for (const auto& e : entry) proj.push_back(project_interval(e, lo, hi));
            proj = merge_intervals(proj);
            std::vector<Interval> top, rightc;
            clip_to_sides(proj, fs, i, j, top, rightc);
            std::vector<Interval> all = top;
            all.insert(all.end(), rightc.begin(), rightc.end());
            if (merge_intervals(all).size() > entry.size() + 1)
                throw std::logic_error("exit side gained more than one reachable interval");
            if (i == n - 1 && j == m - 1)
                for (const auto& x : all)
                    if (x.contains(1.0)) accept = true;
            auto& up = BR[bi(i, j + 1)];
            for (const auto& x : top) up.push_back(x);
            auto& rt = LR[li(i + 1, j)];
            for (auto it = rightc.rbegin(); it != rightc.rend(); ++it) rt.push_back({2.0 - it->hi, 2.0 - it->lo});
            if (trace) {
                SpeedCellTrace c;
                c.i = i;
                c.j = j;
                c.entry = entry;
                c.top = up;
                c.right = rt;
                c.left_in = LR[li(i, j)];
                c.bottom_in = BR[bi(i, j)];
                trace->push_back(std::move(c));
            }
        }
    return accept;
}

namespace {

class FastDecider {
public:
    FastDecider(const SpeedModel& sm, const FreeSpace& fs) : sm_(sm), fs_(fs), rng_(12345) {}

    bool run(const FastCellHook* hook) {
        int n = fs_.n(), m = fs_.m();
        std::vector<int> bottom(n, -1);
        bool accept = false;
        for (int j = 0; j < m; ++j) {
            int left = -1;
            for (int i = 0; i < n; ++i) {
                ci_ = i;
                cj_ = j;
                int seq = join(left, bottom[i]);
                if (i == 0 && j == 0) seq = make_node({0.0, 0.0}, {0.0, 0.0}, -1, -1, 0.0, 0.0);
                int top = -1, right = -1;
                if (seq >= 0) {
                    bool corner = process(seq, top, right);
                    if (i == n - 1 && j == m - 1) accept = corner;
                }
                if (hook) emit(*hook, top, right);
                bottom[i] = top;
                left = right;
            }
        }
        return accept;
    }

private:
    struct Node {
        DiagPoint L, R;
        int ci, cj;
        double el, er;
        unsigned pri;
        int lc = -1, rc = -1;
    };

    const SpeedModel& sm_;
    const FreeSpace& fs_;
    std::mt19937 rng_;
    std::vector<Node> pool_;
    int ci_ = 0, cj_ = 0;

    int make_node(DiagPoint L, DiagPoint R, int ci, int cj, double el, double er) {
        pool_.push_back(Node{L, R, ci, cj, el, er, static_cast<unsigned>(rng_())});
        return static_cast<int>(pool_.size()) - 1;
    }

    double exit_coord(DiagPoint p, ProjDir d) const {
        auto t = min_max_projection(sm_, p, DiagEdge{true, ci_, cj_ + 1}, d);
        if (t.pos == ProjPos::On && t.at.x < ci_ + 1) return t.at.x - ci_;
        auto r = min_max_projection(sm_, p, DiagEdge{false, ci_ + 1, cj_}, d);
        if (r.pos == ProjPos::On) return 2.0 - (r.at.y - cj_);
        if (t.pos == ProjPos::On) return 1.0;
        throw std::logic_error("projection chain missed the cell exit");
    }

    double lcoord(int t) const {
        const Node& x = pool_[t];
        return (x.ci == ci_ && x.cj == cj_) ? x.el : exit_coord(x.L, ProjDir::Max);
    }
    double rcoord(int t) const {
        const Node& x = pool_[t];
        return (x.ci == ci_ && x.cj == cj_) ? x.er : exit_coord(x.R, ProjDir::Min);
    }

    template <class Pred>
    void split(int t, const Pred& pred, int& a, int& b) {
        if (t < 0) {
            a = b = -1;
            return;
        }
        if (pred(t)) {
            split(pool_[t].lc, pred, a, pool_[t].lc);
            b = t;
        } else {
            split(pool_[t].rc, pred, pool_[t].rc, b);
            a = t;
        }
    }

    int join(int a, int b) {
        if (a < 0) return b;
        if (b < 0) return a;
        if (pool_[a].pri > pool_[b].pri) {
            pool_[a].rc = join(pool_[a].rc, b);
            return a;
        }
        pool_[b].lc = join(a, pool_[b].lc);
        return b;
    }

    void inorder(int t, std::vector<int>& out) const {
        if (t < 0) return;
        inorder(pool_[t].lc, out);
        out.push_back(t);
        inorder(pool_[t].rc, out);
    }

    // Removes nodes meeting [g1, g2] as selected by the two predicates and returns them.
    template <class P1, class P2>
    void extract(int& seq, const P1& starts, const P2& ends, std::vector<int>& out) {
        int a, rest, mid, c;
        split(seq, starts, a, rest);
        split(rest, ends, mid, c);
        inorder(mid, out);
        seq = join(a, c);
    }

    void insert_piece(int& seq, Interval p, bool top_side) {
        for (;;) {
            int a, rest, mid, c;
            split(seq, [&](int t) { return rcoord(t) >= p.lo - kSlack; }, a, rest);
            split(rest, [&](int t) { return lcoord(t) > p.hi + kSlack; }, mid, c);
            if (mid < 0) {
                seq = join(a, c);
                break;
            }
            std::vector<int> ids;
            inorder(mid, ids);
            for (int t : ids) {
                p.lo = std::min(p.lo, lcoord(t));
                p.hi = std::max(p.hi, rcoord(t));
            }
            seq = join(a, c);
        }
        DiagPoint L, R;
        if (top_side) {
            L = {ci_ + p.lo, static_cast<double>(cj_ + 1)};
            R = {ci_ + p.hi, static_cast<double>(cj_ + 1)};
        } else {
            L = {static_cast<double>(ci_ + 1), cj_ + 2.0 - p.lo};
            R = {static_cast<double>(ci_ + 1), cj_ + 2.0 - p.hi};
        }
        int node = make_node(L, R, ci_, cj_, p.lo, p.hi);
        int a, b;
        split(seq, [&](int t) { return lcoord(t) >= p.lo; }, a, b);
        seq = join(join(a, node), b);
    }

    bool process(int seq, int& top, int& right) {
        std::vector<Interval> g = exit_feasible(fs_, ci_, cj_);
        std::vector<std::pair<double, double>> bad;
        double prev = -kInf;
        for (const auto& x : g) {
            bad.push_back({prev, x.lo});
            prev = x.hi;
        }
        bad.push_back({prev, kInf});
        std::vector<int> S;
        for (auto [g1, g2] : bad) {
            extract(
                seq, [&](int t) { return rcoord(t) > g1 + kSlack; },
                [&](int t) { return lcoord(t) >= g2 - kSlack; }, S);
        }
        extract(
            seq, [&](int t) { return rcoord(t) >= 1.0 - kSlack; }, [&](int t) { return lcoord(t) > 1.0 + kSlack; }, S);
        std::vector<Interval> su;
        for (int t : S) su.push_back({lcoord(t), rcoord(t)});
        su = merge_intervals(su);
        std::vector<Interval> tp, rp;
        clip_to_sides(su, fs_, ci_, cj_, tp, rp);
        split(seq, [&](int t) { return lcoord(t) >= 1.0; }, top, right);
        bool corner = false;
        for (const auto& p : tp) {
            if (p.contains(1.0)) corner = true;
            insert_piece(top, p, true);
        }
        for (const auto& p : rp) {
            if (p.contains(1.0)) corner = true;
            insert_piece(right, p, false);
        }
        return corner;
    }

    void emit(const FastCellHook& hook, int top, int right) {
        std::vector<int> ids;
        std::vector<Interval> tv, rv;
        inorder(top, ids);
        for (int t : ids) tv.push_back({lcoord(t), rcoord(t)});
        ids.clear();
        inorder(right, ids);
        for (int t : ids) rv.push_back({2.0 - rcoord(t), 2.0 - lcoord(t)});
        hook(ci_, cj_, merge_intervals(tv), merge_intervals(rv));
    }
};

}  // namespace

bool decide_speed_fast(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof, double eps,
                       const FastCellHook* hook) {
    SpeedModel sm(P, Q, prof);
    if (sm.blocked()) return false;
    if (!within(dist2(P.vertex(0), Q.vertex(0)), eps)) return false;
    FreeSpace fs(P, Q, eps);
    FastDecider d(sm, fs);
    return d.run(hook);
}

SpeedInstance lower_bound_instance(int n) {
    if (n < 4 || n % 2 != 0) throw ContractError("lower bound instance needs an even n >= 4");
    double delta = 1e-4 / n;
    std::vector<Point> p;
    for (int k = 0; k <= n; ++k) p.push_back({k % 2 == 0 ? -0.5 : 0.5, 0.0});
    std::vector<Point> q{{0.0, -0.5 + delta}, {0.0, 0.5}};
    for (int k = 1; k <= n / 2; ++k) q.push_back({0.0, k % 2 == 1 ? -0.5 : 0.5});
    SpeedInstance inst{Polyline(p), Polyline(q), {}, std::sqrt(0.5 - delta + delta * delta)};
    inst.prof.P.assign(n, SpeedLimit{1.0, 1.0});
    int m = n / 2 + 1;
    double h = n / 2.0;
    inst.prof.Q.assign(m, SpeedLimit{h, h});
    inst.prof.Q[0] = SpeedLimit{2.0 / n, kInf};
    inst.prof.Q[m - 1] = SpeedLimit{1.0 / n, 1.0 / n};
    return inst;
}

int lower_bound_interval_count(const SpeedInstance& inst) {
    std::vector<SpeedCellTrace> tr;
    decide_speed_simple(inst.P, inst.Q, inst.prof, inst.eps, &tr);
    int n = static_cast<int>(inst.P.segments()), m = static_cast<int>(inst.Q.segments());
    int best = 0;
    for (const auto& c : tr)
        if (c.j == m - 1 && c.i >= n / 2)
            best = std::max({best, static_cast<int>(c.left_in.size()), static_cast<int>(c.bottom_in.size())});
    return best;
}

std::vector<std::pair<int, int>> compute_potential_chains(const TravelTimes& slow, double t) {
    std::vector<std::pair<int, int>> out;
    int m = slow.segments();
    if (!(t <= slow.vertex_time(0, m))) return out;
    int i = 0, j = 1;
    while (i < m && j <= m) {
        if (t <= slow.vertex_time(i, j)) {
            out.push_back({i, j});
            ++i;
            if (j <= i) j = i + 1;
        } else {
            ++j;
        }
    }
    return out;
}

namespace {

// Roots s of |u(s) - x|^2 = |v(s) - y|^2 with u = b0 + s d1, v = c0 + (alpha + beta s) d2.
void equal_distance_roots(const Point& x, const Point& y, const Point& b0, const Point& d1, const Point& c0,
                          const Point& d2, double alpha, double beta, std::vector<double>& out) {
    std::size_t d = x.size();
    double A = 0.0, B = 0.0, C = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        double U0 = b0[k] - x[k];
        double V0 = c0[k] + alpha * d2[k] - y[k];
        double V1 = beta * d2[k];
        A += d1[k] * d1[k] - V1 * V1;
        B += 2.0 * (U0 * d1[k] - V0 * V1);
        C += U0 * U0 - V0 * V0;
    }
    const double tol = 1e-9;
    auto wpar = [&](double s) { return alpha + beta * s; };
    auto accept = [&](double s) {
        double w = wpar(s);
        if (s < -tol || s > 1.0 + tol || w < -tol || w > 1.0 + tol) return;
        s = std::clamp(s, 0.0, 1.0);
        double dist2u = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            double u = b0[k] + s * d1[k] - x[k];
            dist2u += u * u;
        }
        out.push_back(std::sqrt(dist2u));
    };
    double scale = std::max({std::fabs(A), std::fabs(B), std::fabs(C), 1e-300});
    if (std::fabs(A) <= 1e-14 * scale) {
        if (std::fabs(B) <= 1e-14 * scale) {
            if (std::fabs(C) > 1e-14 * scale) return;
            // identically equal: minimise |u(s) - x| over the admissible s range
            double lo = 0.0, hi = 1.0;
            if (beta != 0.0) {
                double s0 = (0.0 - alpha) / beta, s1 = (1.0 - alpha) / beta;
                lo = std::max(lo, std::min(s0, s1));
                hi = std::min(hi, std::max(s0, s1));
            } else if (alpha < -tol || alpha > 1.0 + tol) {
                return;
            }
            if (lo > hi) return;
            double dd = 0.0, wd = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                dd += d1[k] * d1[k];
                wd += (b0[k] - x[k]) * d1[k];
            }
            double s = dd > 0.0 ? std::clamp(-wd / dd, lo, hi) : lo;
            accept(s);
            return;
        }
        accept(-C / B);
        return;
    }
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) {
        if (disc < -1e-12 * B * B) return;
        disc = 0.0;
    }
    double sq = std::sqrt(disc);
    double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    if (q != 0.0) {
        accept(q / A);
        accept(C / q);
    } else {
        accept(0.0);
    }
}

Point sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

// Pairs of vertices on A traversed at fast speed against chains on B at slow speed.
void typec_side(const Polyline& A, const TravelTimes& afast, const Polyline& B, const TravelTimes& bslow,
                std::vector<double>& out) {
    int na = static_cast<int>(A.segments()), nb = static_cast<int>(B.segments());
    for (int i = 0; i <= na; ++i)
        for (int j = i + 1; j <= na; ++j) {
            double t = afast.vertex_time(i, j);
            if (t == kInf) continue;
            const Point& x = A.vertex(i);
            const Point& y = A.vertex(j);
            if (t == 0.0) {
                for (int e = 0; e < nb; ++e) bisector_events(x, y, B.vertex(e), B.vertex(e + 1), out);
                continue;
            }
            auto chains = compute_potential_chains(bslow, t);
            for (std::size_t c = 0; c < chains.size(); ++c) {
                int k = chains[c].first;
                double tk = bslow.tau(k);
                if (tk == kInf || tk == 0.0) continue;
                int e_lo = chains[c].second - 1;
                int e_hi = (c + 1 < chains.size() && chains[c + 1].first == k + 1) ? chains[c + 1].second - 1 : nb - 1;
                Point b0 = B.vertex(k), d1 = sub(B.vertex(k + 1), B.vertex(k));
                for (int e = e_lo; e <= e_hi; ++e) {
                    double te = bslow.tau(e);
                    if (te == kInf || te == 0.0) continue;
                    Point c0 = B.vertex(e), d2 = sub(B.vertex(e + 1), B.vertex(e));
                    double alpha, beta;
                    if (e == k) {
                        alpha = t / tk;
                        beta = 1.0;
                    } else {
                        double mid = bslow.vertex_time(k + 1, e);
                        if (mid == kInf) continue;
                        alpha = (t - mid - tk) / te;
                        beta = tk / te;
                    }
                    equal_distance_roots(x, y, b0, d1, c0, d2, alpha, beta, out);
                }
            }
        }
}

// Straight passages from a vertex of A (against a point of B) to a vertex of B
// (against a point of A) at fixed speeds: equal distances and equal travel times.
void cross_side(const Polyline& A, const TravelTimes& ta, const Polyline& B, const TravelTimes& tb,
                std::vector<double>& out) {
    int na = static_cast<int>(A.segments()), nb = static_cast<int>(B.segments());
    for (int i = 0; i <= na; ++i)
        for (int e = i; e < na; ++e) {
            double te = ta.tau(e);
            double pre = ta.vertex_time(i, e);
            if (te == kInf || pre == kInf) continue;
            Point c0 = A.vertex(e), d2 = sub(A.vertex(e + 1), A.vertex(e));
            for (int j = 1; j <= nb; ++j)
                for (int k = 0; k < j; ++k) {
                    double tk = tb.tau(k);
                    double post = tb.vertex_time(k + 1, j);
                    if (tk == kInf || post == kInf) continue;
                    if (te == 0.0 || tk == 0.0) {
                        if (te == 0.0 && tk > 0.0) {
                            double sfix = 1.0 - (pre - post) / tk;
                            if (sfix >= 0.0 && sfix <= 1.0) out.push_back(dist(A.vertex(i), B.at(k + sfix)));
                        } else if (te > 0.0) {
                            double w = (post - pre) / te;
                            if (w >= 0.0 && w <= 1.0) out.push_back(dist(B.vertex(j), A.at(e + w)));
                        }
                        continue;
                    }
                    Point b0 = B.vertex(k), d1 = sub(B.vertex(k + 1), B.vertex(k));
                    double alpha = (tk + post - pre) / te, beta = -tk / te;
                    equal_distance_roots(A.vertex(i), B.vertex(j), b0, d1, c0, d2, alpha, beta, out);
                }
        }
}

// Vertex pairs of A against any point pair on B with equal travel times.
void pair_side_all(const Polyline& A, const TravelTimes& ta, const Polyline& B, const TravelTimes& tb,
                   std::vector<double>& out) {
    int na = static_cast<int>(A.segments()), nb = static_cast<int>(B.segments());
    for (int i = 0; i <= na; ++i)
        for (int j = i + 1; j <= na; ++j) {
            double t = ta.vertex_time(i, j);
            if (t == kInf || t == 0.0) continue;
            for (int k = 0; k < nb; ++k) {
                double tk = tb.tau(k);
                if (tk == kInf) {
                    bisector_events(A.vertex(i), A.vertex(j), B.vertex(k), B.vertex(k + 1), out);
                    continue;
                }
                Point b0 = B.vertex(k), d1 = sub(B.vertex(k + 1), B.vertex(k));
                for (int e = k; e < nb; ++e) {
                    double te = tb.tau(e);
                    if (te == kInf) continue;
                    if (te == 0.0 || tk == 0.0) {
                        double mid = tb.vertex_time(k + 1, e);
                        if (e == k || mid == kInf) continue;
                        if (tk == 0.0 && te > 0.0) {
                            double w = (t - mid) / te;
                            if (w >= 0.0 && w <= 1.0) out.push_back(dist(A.vertex(j), B.at(e + w)));
                        } else if (tk > 0.0) {
                            double sfix = 1.0 - (t - mid) / tk;
                            if (sfix >= 0.0 && sfix <= 1.0) out.push_back(dist(A.vertex(i), B.at(k + sfix)));
                        }
                        continue;
                    }
                    Point c0 = B.vertex(e), d2 = sub(B.vertex(e + 1), B.vertex(e));
                    double alpha, beta;
                    if (e == k) {
                        alpha = t / tk;
                        beta = 1.0;
                    } else {
                        double mid = tb.vertex_time(k + 1, e);
                        if (mid == kInf) continue;
                        alpha = (t - mid - tk) / te;
                        beta = tk / te;
                    }
                    equal_distance_roots(A.vertex(i), A.vertex(j), b0, d1, c0, d2, alpha, beta, out);
                }
            }
        }
}

// Chains leaving a vertex-vertex corner at fixed speeds: distance at each later vertex line of B.
void corner_side(const Polyline& A, const TravelTimes& ta, const Polyline& B, const TravelTimes& tb,
                 std::vector<double>& out) {
    int na = static_cast<int>(A.segments()), nb = static_cast<int>(B.segments());
    for (int i = 0; i <= na; ++i)
        for (int j = 0; j < nb; ++j) {
            int e = i;
            double used = 0.0;
            for (int k = j + 1; k <= nb; ++k) {
                double T = tb.vertex_time(j, k);
                if (T == kInf) break;
                while (e < na && ta.tau(e) != kInf && used + ta.tau(e) <= T) used += ta.tau(e++);
                double x = e;
                if (e < na && ta.tau(e) != kInf && ta.tau(e) > 0.0) x = e + (T - used) / ta.tau(e);
                if (e >= na && T > used) break;
                out.push_back(dist(A.at(x), B.vertex(k)));
            }
        }
}

// Same chains traced backwards from a corner.
void corner_side_back(const Polyline& A, const TravelTimes& ta, const Polyline& B, const TravelTimes& tb,
                      std::vector<double>& out) {
    int na = static_cast<int>(A.segments()), nb = static_cast<int>(B.segments());
    for (int i = 0; i <= na; ++i)
        for (int j = 1; j <= nb; ++j) {
            int e = i - 1;
            double used = 0.0;
            for (int k = j - 1; k >= 0; --k) {
                double T = tb.vertex_time(k, j);
                if (T == kInf) break;
                while (e >= 0 && ta.tau(e) != kInf && used + ta.tau(e) <= T) used += ta.tau(e--);
                double x = e + 1;
                if (e >= 0 && ta.tau(e) != kInf && ta.tau(e) > 0.0) x = e + 1 - (T - used) / ta.tau(e);
                if (e < 0 && T > used) break;
                out.push_back(dist(A.at(x), B.vertex(k)));
            }
        }
}

}  // namespace

std::vector<double> type_c_criticals_speed(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof) {
    SpeedModel sm(P, Q, prof);
    std::vector<double> out;
    typec_side(P, sm.p_times(ProjDir::Min), Q, sm.q_times(ProjDir::Min), out);
    typec_side(Q, sm.q_times(ProjDir::Max), P, sm.p_times(ProjDir::Max), out);
    for (const auto& a : P.vertices())
        for (const auto& b : Q.vertices()) out.push_back(dist(a, b));
    for (auto d : {ProjDir::Min, ProjDir::Max}) {
        cross_side(P, sm.p_times(d), Q, sm.q_times(d), out);
        cross_side(Q, sm.q_times(d), P, sm.p_times(d), out);
        pair_side_all(P, sm.p_times(d), Q, sm.q_times(d), out);
        pair_side_all(Q, sm.q_times(d), P, sm.p_times(d), out);
        corner_side(P, sm.p_times(d), Q, sm.q_times(d), out);
        corner_side(Q, sm.q_times(d), P, sm.p_times(d), out);
        corner_side_back(P, sm.p_times(d), Q, sm.q_times(d), out);
        corner_side_back(Q, sm.q_times(d), P, sm.p_times(d), out);
    }
    return out;
}

std::vector<CriticalValue> critical_values_speed(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof) {
    std::vector<CriticalValue> out;
    for (const auto& c : critical_values_classic(P, Q))
        if (c.kind != CritKind::C) out.push_back(c);
    for (double v : type_c_criticals_speed(P, Q, prof)) out.push_back({v, CritKind::C, {-1, -1, -1, -1}});
    sort_unique(out);
    return out;
}

Optimum compute_speed_frechet(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof) {
    SpeedModel sm(P, Q, prof);
    if (sm.blocked()) return {kInf, CritKind::Bisection};
    return search_critical(critical_values_speed(P, Q, prof),
                           [&](double e) { return decide_speed_fast(P, Q, prof, e); },
                           2.0 * bbox_diagonal({&P, &Q}) + 1.0);
}

}  // namespace frechet
