#include "frechet/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace frechet {

SampledFreeSpace::SampledFreeSpace(const Polyline& P, const Polyline& Q, double eps, int r_) : r(r_) {
    w = static_cast<int>(P.segments()) * r + 1;
    h = static_cast<int>(Q.segments()) * r + 1;
    ok.assign(static_cast<std::size_t>(w) * h, 0);
    std::vector<Point> pp(w), qq(h);
    for (int a = 0; a < w; ++a) pp[a] = P.at(static_cast<double>(a) / r);
    for (int b = 0; b < h; ++b) qq[b] = Q.at(static_cast<double>(b) / r);
    for (int a = 0; a < w; ++a)
        for (int b = 0; b < h; ++b) ok[static_cast<std::size_t>(a) * h + b] = dist2(pp[a], qq[b]) <= eps * eps;
}

namespace {

std::vector<char> bfs(const SampledFreeSpace& fs, int a0, int b0, bool monotone) {
    std::vector<char> seen(fs.ok.size(), 0);
    if (!fs.at(a0, b0)) return seen;
    std::deque<std::pair<int, int>> q{{a0, b0}};
    seen[static_cast<std::size_t>(a0) * fs.h + b0] = 1;
    while (!q.empty()) {
        auto [a, b] = q.front();
        q.pop_front();
        for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db) {
                if (da == 0 && db == 0) continue;
                if (monotone && (da < 0 || db < 0)) continue;
                int x = a + da, y = b + db;
                if (x < 0 || y < 0 || x >= fs.w || y >= fs.h) continue;
                std::size_t k = static_cast<std::size_t>(x) * fs.h + y;
                if (seen[k] || !fs.ok[k]) continue;
                seen[k] = 1;
                q.push_back({x, y});
            }
    }
    return seen;
}

}  // namespace

bool grid_bfs_decide(const Polyline& P, const Polyline& Q, double eps, int r, bool monotone) {
    SampledFreeSpace fs(P, Q, eps, r);
    auto seen = bfs(fs, 0, 0, monotone);
    return seen.back() != 0;
}

std::vector<char> grid_reach_from(const SampledFreeSpace& fs, int a0) {
    auto seen = bfs(fs, a0, 0, true);
    std::vector<char> top(fs.w);
    for (int a = 0; a < fs.w; ++a) top[a] = seen[static_cast<std::size_t>(a) * fs.h + fs.h - 1];
    return top;
}

std::vector<std::vector<OptInterval>> cell_reach_rows(const FreeSpace& fs, int i, std::vector<OptInterval> start) {
    int n = fs.n(), m = fs.m();
    std::vector<std::vector<OptInterval>> rows{start};
    // along row i itself
    std::vector<OptInterval> cur(n);
    bool carry = false;
    for (int c = 0; c < n; ++c) {
        auto f = fs.bf(c, i);
        if (!f) {
            carry = false;
            continue;
        }
        Interval F{c + f->lo, c + f->hi};
        OptInterval out;
        if (carry && F.lo <= c) out = F;
        else if (start[c]) out = Interval{std::max(F.lo, start[c]->lo), F.hi};
        cur[c] = out;
        carry = out && F.hi >= c + 1;
    }
    rows[0] = cur;
    for (int j = i; j < m; ++j) {
        std::vector<OptInterval> top(n);
        OptInterval left;
        for (int c = 0; c < n; ++c) {
            const auto& br = rows.back()[c];
            auto ft = fs.bf(c, j + 1);
            auto lv = fs.lf(c + 1, j);
            OptInterval t, r;
            if (br) {
                if (ft && c + ft->hi >= br->lo - 1e-12) t = Interval{std::max(br->lo, c + ft->lo), c + ft->hi};
                r = lv;
            }
            if (left) {
                if (ft) t = Interval{c + ft->lo, c + ft->hi};
                if (lv && lv->hi >= left->lo - 1e-12) {
                    Interval x{std::max(left->lo, lv->lo), lv->hi};
                    r = r ? Interval{std::min(r->lo, x.lo), r->hi} : x;
                }
            }
            top[c] = t;
            left = r;
        }
        rows.push_back(top);
    }
    return rows;
}

bool slope_grid_decide(const Polyline& P, const Polyline& Q, const SpeedProfiles& prof, double eps, int r,
                       SlopeSlack slack) {
    SpeedModel sm(P, Q, prof);
    if (sm.blocked()) return false;
    int n = sm.n(), m = sm.m();
    double lp = 0.0, lq = 0.0;
    for (int i = 0; i < n; ++i) lp = std::max(lp, P.seg_length(i));
    for (int j = 0; j < m; ++j) lq = std::max(lq, Q.seg_length(j));
    double hstep = 1.0 / r;
    double e = eps;
    if (slack == SlopeSlack::Loose) e = eps + (lp + lq) * hstep;
    if (slack == SlopeSlack::Tight) e = std::max(0.0, eps - (lp + lq) * hstep);
    auto feasible = [&](double x, double y) { return within(dist2(P.at(x), Q.at(y)), e); };
    // H[j][a]: point (a / r, j); V[i][b]: point (i, b / r)
    std::vector<std::vector<char>> H(m + 1, std::vector<char>(n * r + 1, 0)), V(n + 1, std::vector<char>(m * r + 1, 0));
    auto mark = [&](bool horiz, int line, int k) {
        if (horiz) {
            H[line][k] = 1;
            if (k % r == 0) V[k / r][line * r] = 1;
        } else {
            V[line][k] = 1;
            if (k % r == 0) H[k / r][line * r] = 1;
        }
    };
    if (!feasible(0.0, 0.0)) return false;
    mark(true, 0, 0);
    auto slope_ok = [&](double dx, double dy, double lo, double hi) {
        if (slack == SlopeSlack::Loose) {
            double xl = std::max(0.0, dx - 2 * hstep), xh = dx + 2 * hstep;
            double yl = std::max(0.0, dy - 2 * hstep), yh = dy + 2 * hstep;
            if (xh < 0.0 || yh < 0.0) return false;
            double smin = xh > 0.0 ? yl / xh : kInf;
            double smax = xl > 0.0 ? yh / xl : kInf;
            return smax >= lo && smin <= hi;
        }
        if (dx < 0.0 || dy < 0.0) return false;
        if (dx == 0.0 && dy == 0.0) return true;
        double s = dx == 0.0 ? kInf : dy / dx;
        return s >= lo * (1.0 - 1e-12) && s <= hi * (1.0 + 1e-12);
    };
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) {
            double lo = sm.min_slope(i, j), hi = sm.max_slope(i, j);
            std::vector<std::pair<double, double>> entries;
            for (int k = 0; k <= r; ++k) {
                if (V[i][j * r + k]) entries.push_back({0.0, static_cast<double>(k) / r});
                if (H[j][i * r + k]) entries.push_back({static_cast<double>(k) / r, 0.0});
            }
            if (entries.empty()) continue;
            for (int k = 0; k <= r; ++k) {
                double t = static_cast<double>(k) / r;
                if (!H[j + 1][i * r + k] && feasible(i + t, j + 1.0))
                    for (auto [px, py] : entries)
                        if (slope_ok(t - px, 1.0 - py, lo, hi)) {
                            mark(true, j + 1, i * r + k);
                            break;
                        }
                if (!V[i + 1][j * r + k] && feasible(i + 1.0, j + t))
                    for (auto [px, py] : entries)
                        if (slope_ok(1.0 - px, t - py, lo, hi)) {
                            mark(false, i + 1, j * r + k);
                            break;
                        }
            }
        }
    return H[m][n * r] != 0;
}

void enumerate_pointset_curves(const std::vector<Point>& S, int max_len,
                               const std::function<bool(const std::vector<int>&)>& extend,
                               const std::function<void(const std::vector<int>&)>& visit, bool all_points) {
    int k = static_cast<int>(S.size());
    std::vector<int> seq;
    std::vector<int> used(k, 0);
    int distinct = 0;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(seq.size()) == max_len) return;
        for (int v = 0; v < k; ++v) {
            seq.push_back(v);
            if (used[v]++ == 0) ++distinct;
            if (!extend || extend(seq)) {
                if (!all_points || distinct == k) visit(seq);
                rec();
            }
            if (--used[v] == 0) --distinct;
            seq.pop_back();
        }
    };
    rec();
}

}  // namespace frechet
