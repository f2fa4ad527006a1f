#include "frechet/fsmap.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace frechet {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-12;

// Query values are compared against bounds nudged by -1, 0 or +1 infinitesimals.
struct Key {
    double v;
    int side;
    bool operator<(const Key& o) const { return v < o.v || (v == o.v && side < o.side); }
    bool operator<=(const Key& o) const { return !(o < *this); }
    bool operator>=(const Key& o) const { return !(*this < o); }
};

// Piecewise map from ray height to the first segment hit, for the levels pushed so far.
class Skyline {
public:
    Skyline() { d_.push_back({Key{kInfD, 1}, RayHit{}}); }

    RayHit query(double x) {
        Key q{x, 0};
        while (d_.size() > 1 && d_.front().hi < q) d_.pop_front();
        return d_.front().hit;
    }
    // s covers every query key <= bound
    void push_s(Key bound, int level) {
        while (d_.size() > 1 && d_.front().hi <= bound) d_.pop_front();
        d_.push_front({bound, RayHit{RayHit::S, level}});
    }
    // t covers every query key > bound
    void push_t(Key bound, int level) {
        while (d_.size() >= 2 && d_[d_.size() - 2].hi >= bound) d_.pop_back();
        d_.back().hi = bound;
        d_.push_back({Key{kInfD, 1}, RayHit{RayHit::T, level}});
    }

private:
    struct Piece {
        Key hi;
        RayHit hit;
    };
    std::deque<Piece> d_;
};

// Blocking level for a ray leaving each s_k; levels.size() when it escapes.
std::vector<int> block_levels(const std::vector<double>& a, const std::vector<double>& b) {
    auto up = ray_shoot_up(a, b);
    int L = static_cast<int>(a.size());
    std::vector<int> block(L, L);
    for (int k = L - 1; k >= 0; --k) {
        if (up[k].kind == RayHit::T) block[k] = up[k].level;
        else if (up[k].kind == RayHit::S) block[k] = block[up[k].level];
    }
    return block;
}

OptInterval intersect(const OptInterval& a, const OptInterval& b) {
    if (!a || !b) return std::nullopt;
    double lo = std::max(a->lo, b->lo), hi = std::min(a->hi, b->hi);
    if (lo > hi + kSlack) return std::nullopt;
    return Interval{lo, std::max(lo, hi)};
}

}  // namespace

std::vector<RayHit> ray_shoot_up(const std::vector<double>& a, const std::vector<double>& b) {
    int L = static_cast<int>(a.size());
    std::vector<RayHit> up(L);
    Skyline sky;
    for (int k = L - 1; k >= 0; --k) {
        up[k] = sky.query(a[k]);
        sky.push_s(Key{a[k], 0}, k);
        sky.push_t(Key{b[k], 0}, k);
    }
    return up;
}

std::vector<RayHit> ray_shoot_up_naive(const std::vector<double>& a, const std::vector<double>& b) {
    int L = static_cast<int>(a.size());
    std::vector<RayHit> up(L);
    for (int k = 0; k < L; ++k)
        for (int q = k + 1; q < L; ++q) {
            if (a[k] > b[q]) {
                up[k] = {RayHit::T, q};
                break;
            }
            if (a[q] >= a[k]) {
                up[k] = {RayHit::S, q};
                break;
            }
        }
    return up;
}

std::vector<int> topmost_reachable(const std::vector<RayHit>& up) {
    int L = static_cast<int>(up.size());
    std::vector<int> top(L, L - 1);
    for (int k = L - 1; k >= 0; --k) {
        if (up[k].kind == RayHit::T) top[k] = up[k].level;
        else if (up[k].kind == RayHit::S) top[k] = top[up[k].level];
    }
    return top;
}

std::vector<int> topmost_reachable_naive(const std::vector<double>& a, const std::vector<double>& b) {
    int L = static_cast<int>(a.size());
    std::vector<int> top(L, L - 1);
    for (int k = 0; k < L; ++k) {
        // lowest height at which the corridor is still open
        double h = a[k];
        for (int q = k + 1; q < L; ++q) {
            if (h > b[q]) {
                top[k] = q;
                break;
            }
            h = std::max(h, a[q]);
        }
    }
    return top;
}

CellSet::CellSet(std::vector<OptInterval> iv) : iv_(std::move(iv)) {
    int n = cells();
    nxt_.assign(n + 1, -1);
    prv_.assign(n, -1);
    for (int c = n - 1; c >= 0; --c) nxt_[c] = iv_[c] ? c : nxt_[c + 1];
    for (int c = 0; c < n; ++c) prv_[c] = iv_[c] ? c : (c > 0 ? prv_[c - 1] : -1);
}

std::optional<double> CellSet::next(double x) const {
    int n = cells();
    if (n == 0) return std::nullopt;
    int c = std::clamp(static_cast<int>(std::floor(x)), 0, n - 1);
    for (int k : {c - 1, c}) {
        if (k < 0 || !iv_[k] || iv_[k]->hi < x - kSlack) continue;
        if (k == c - 1 && x - c >= kSlack) continue;
        return std::clamp(x, iv_[k]->lo, iv_[k]->hi);
    }
    int c2 = nxt_[c + 1];
    if (c2 < 0) return std::nullopt;
    return iv_[c2]->lo;
}

std::optional<double> CellSet::prev(double x) const {
    int n = cells();
    if (n == 0) return std::nullopt;
    int c = std::clamp(static_cast<int>(std::floor(x)), 0, n - 1);
    for (int k : {c + 1, c}) {
        if (k >= n || !iv_[k] || iv_[k]->lo > x + kSlack) continue;
        if (k == c + 1 && k - x >= kSlack) continue;
        return std::clamp(x, iv_[k]->lo, iv_[k]->hi);
    }
    int c2 = c >= 1 ? prv_[c - 1] : -1;
    if (c2 < 0) return std::nullopt;
    return iv_[c2]->hi;
}

bool CellSet::contains(double x) const {
    auto v = next(x);
    return v && *v <= x + kSlack;
}

std::vector<Interval> CellSet::merged() const {
    std::vector<Interval> out;
    for (const auto& v : iv_) {
        if (!v) continue;
        if (!out.empty() && v->lo <= out.back().hi + kSlack) out.back().hi = std::max(out.back().hi, v->hi);
        else out.push_back(*v);
    }
    return out;
}

std::optional<Interval> CellSet::component(double x) const {
    for (const auto& I : merged())
        if (I.contains(x)) return I;
    return std::nullopt;
}

Strip map_strip(const FreeSpace& fs, int j) {
    int n = fs.n();
    Strip s;
    s.bottom.resize(n);
    s.top.resize(n);
    s.level.resize(n + 1);
    for (int c = 0; c < n; ++c) {
        if (const auto& v = fs.bf(c, j)) s.bottom[c] = Interval{c + v->lo, c + v->hi};
        if (const auto& v = fs.bf(c, j + 1)) s.top[c] = Interval{c + v->lo, c + v->hi};
    }
    for (int k = 0; k <= n; ++k) s.level[k] = fs.lf(k, j);
    return s;
}

std::vector<OptInterval> flip_cells(const std::vector<OptInterval>& v, int n) {
    std::vector<OptInterval> out(v.size());
    for (std::size_t c = 0; c < v.size(); ++c)
        if (v[c]) out[v.size() - 1 - c] = Interval{n - v[c]->hi, n - v[c]->lo};
    return out;
}

Strip rotate_strip(const Strip& s) {
    int n = s.cells();
    Strip r;
    r.bottom = flip_cells(s.top, n);
    r.top = flip_cells(s.bottom, n);
    r.level.resize(n + 1);
    for (int k = 0; k <= n; ++k)
        if (const auto& v = s.level[n - k]) r.level[k] = Interval{1.0 - v->hi, 1.0 - v->lo};
    return r;
}

StripReach propagate_strip(const Strip& s, const std::vector<OptInterval>& start, bool left_source) {
    int n = s.cells();
    CellSet ftop(s.top);
    std::vector<double> a(n + 1), b(n + 1);
    for (int k = 0; k <= n; ++k) {
        if (s.level[k]) {
            a[k] = s.level[k]->lo;
            b[k] = s.level[k]->hi;
        } else {
            a[k] = 2.0;
            b[k] = -1.0;
        }
    }
    auto block = block_levels(a, b);
    StripReach out;
    out.rp.resize(n);
    out.exits_right.assign(n, 0);
    auto rp_for = [&](int blk, double lo) -> std::optional<double> {
        auto p = ftop.prev(std::min(blk, n));
        if (!p || *p < lo) return std::nullopt;
        return p;
    };
    for (int c = 0; c < n; ++c) {
        int blk = s.level[c + 1] ? block[c + 1] : c + 1;
        out.rp[c] = rp_for(blk, c);
        out.exits_right[c] = blk == n + 1;
    }
    const auto& last = s.level[n];
    if (last && last->lo <= 0.0) {
        out.end_exits_right = true;
        if (last->hi >= 1.0 && ftop.contains(n)) out.rp_end = static_cast<double>(n);
    }
    std::vector<Interval> ranges;
    if (left_source && s.level[0]) {
        out.left_exits_right = block[0] == n + 1;
        auto lp = ftop.next(0.0);
        out.left_rp = rp_for(block[0], 0.0);
        if (lp && out.left_rp && *lp <= *out.left_rp) ranges.push_back({*lp, *out.left_rp});
    }
    for (int c = 0; c < n; ++c) {
        if (!start[c]) continue;
        double x0 = start[c]->lo;
        if (x0 >= n) {
            if (out.rp_end) ranges.push_back({static_cast<double>(n), static_cast<double>(n)});
            continue;
        }
        auto lp = ftop.next(x0);
        if (lp && out.rp[c] && *lp <= *out.rp[c]) ranges.push_back({*lp, *out.rp[c]});
    }
    std::sort(ranges.begin(), ranges.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    out.top.resize(n);
    std::size_t r = 0;
    for (int c = 0; c < n; ++c) {
        if (!s.top[c]) continue;
        const Interval& f = *s.top[c];
        while (r < ranges.size() && ranges[r].hi < f.lo - kSlack) ++r;
        OptInterval acc;
        for (std::size_t q = r; q < ranges.size() && ranges[q].lo <= f.hi + kSlack; ++q) {
            auto x = intersect(f, ranges[q]);
            if (!x) continue;
            if (!acc) acc = x;
            else {
                acc->lo = std::min(acc->lo, x->lo);
                acc->hi = std::max(acc->hi, x->hi);
            }
        }
        out.top[c] = acc;
    }
    return out;
}

std::vector<OptInterval> propagate_row(const FreeSpace& fs, int j, const std::vector<OptInterval>& prev) {
    return propagate_strip(map_strip(fs, j - 1), prev).top;
}

namespace {

std::vector<OptInterval> row_feasible(const FreeSpace& fs, int j) {
    std::vector<OptInterval> f(fs.n());
    for (int c = 0; c < fs.n(); ++c)
        if (const auto& v = fs.bf(c, j)) f[c] = Interval{c + v->lo, c + v->hi};
    return f;
}

std::vector<OptInterval> back_propagate(const Strip& s, const std::vector<OptInterval>& top_start) {
    int n = s.cells();
    auto res = propagate_strip(rotate_strip(s), flip_cells(top_start, n));
    return flip_cells(res.top, n);
}

}  // namespace

FreeSpaceMap::FreeSpaceMap(const Polyline& P, const Polyline& Q, double eps, bool improved)
    : n_(static_cast<int>(P.segments())), m_(static_cast<int>(Q.segments())), fs_(P, Q, eps), improved_(improved) {
    F_.reserve(m_ + 1);
    for (int j = 0; j <= m_; ++j) F_.emplace_back(row_feasible(fs_, j));
    R_.emplace_back(F_[0].all());
    rp_.resize(m_);
    rp_end_.resize(m_);
    std::vector<Strip> strips;
    for (int j = 0; j < m_; ++j) strips.push_back(map_strip(fs_, j));
    for (int j = 1; j <= m_; ++j) {
        auto res = propagate_strip(strips[j - 1], R_[j - 1].all());
        R_.emplace_back(res.top);
        rp_[j - 1] = std::move(res.rp);
        rp_end_[j - 1] = res.rp_end;
    }
    for (int j = 0; j < m_; ++j) {
        auto back = back_propagate(strips[j], F_[j + 1].all());
        std::vector<OptInterval> t(n_);
        for (int c = 0; c < n_; ++c) t[c] = intersect(R_[j].at(c), back[c]);
        T_.emplace_back(t);
    }
    T_.emplace_back(std::vector<OptInterval>(n_));
    if (improved_) build_improved();
}

int FreeSpaceMap::cell_of(double x) const { return std::clamp(static_cast<int>(std::floor(x)), 0, n_ - 1); }

RowSet FreeSpaceMap::row(int j) const { return RowSet{j, R_[j].merged()}; }

std::optional<double> FreeSpaceMap::right_pointer(int j, double x) const {
    if (j >= m_) return std::nullopt;
    if (x >= n_) return rp_end_[j];
    return rp_[j][cell_of(x)];
}

std::vector<std::optional<double>> FreeSpaceMap::interval_pointers(int j) const {
    std::vector<std::optional<double>> out;
    for (const auto& I : R_[j].merged()) {
        auto t = T_[j].prev(I.hi);
        if (!t || *t < I.lo - kSlack) out.push_back(std::nullopt);
        else out.push_back(right_pointer(j, *t));
    }
    return out;
}

std::vector<std::optional<PointerPair>> FreeSpaceMap::walk(int i, double x) const {
    if (!R_[i].contains(x)) throw ContractError("query point is not reachable on its row");
    std::vector<std::optional<PointerPair>> out(m_ - i + 1);
    auto comp = F_[i].component(x);
    double l = x, r = comp ? comp->hi : x;
    out[0] = PointerPair{l, r};
    for (int j = i + 1; j <= m_; ++j) {
        auto t = T_[j - 1].prev(r);
        if (!t || *t < l - kSlack) break;
        auto rr = right_pointer(j - 1, *t);
        auto ll = R_[j].next(l);
        if (!rr || !ll || *ll > *rr + kSlack) break;
        l = *ll;
        r = *rr;
        out[j - i] = PointerPair{l, r};
    }
    return out;
}

std::optional<PointerPair> FreeSpaceMap::query_walk(double x) const { return walk(0, x).back(); }

const FreeSpaceMap::StartInterval* FreeSpaceMap::start_of(double x) const {
    for (const auto& s : starts_)
        if (s.I.contains(x)) return &s;
    return nullptr;
}

void FreeSpaceMap::build_improved() {
    std::vector<std::vector<OptInterval>> back(m_ + 1);
    back[m_] = F_[m_].all();
    for (int j = m_ - 1; j >= 0; --j) back[j] = back_propagate(map_strip(fs_, j), back[j + 1]);
    B0_ = CellSet(back[0]);
    for (const auto& I : F_[0].merged()) {
        StartInterval s{I, std::nullopt, std::nullopt};
        auto last = B0_.prev(I.hi);
        if (last && *last >= I.lo - kSlack) {
            s.last = *last;
            if (auto w = query_walk(*last)) s.rpm = w->second;
            else s.last.reset();
        }
        starts_.push_back(s);
    }
    // lp_m of the left end of every reachable cell interval, top row first
    std::vector<std::vector<std::optional<double>>> lpm(m_ + 1, std::vector<std::optional<double>>(n_));
    for (int c = 0; c < n_; ++c)
        if (R_[m_].at(c)) lpm[m_][c] = R_[m_].at(c)->lo;
    auto target = [&](int row, int c, RayHit::Kind kind) -> std::optional<double> {
        if (kind == RayHit::S) return lpm[row][c];
        int c2 = R_[row].first_from(c + 1);
        return c2 >= 0 ? lpm[row][c2] : std::nullopt;
    };
    std::vector<Skyline> sky(n_);
    auto push_row = [&](int j) {
        for (int c = 0; c < n_; ++c) {
            if (const auto& v = R_[j].at(c)) {
                sky[c].push_s(Key{v->lo, -1}, j);
                sky[c].push_t(Key{v->hi, 0}, j);
            } else {
                sky[c].push_s(Key{kInfD, 0}, j);
                sky[c].push_t(Key{-kInfD, 0}, j);
            }
        }
    };
    push_row(m_);
    for (int j = m_ - 1; j >= 1; --j) {
        for (int c = 0; c < n_; ++c)
            if (const auto& v = R_[j].at(c)) {
                RayHit h = sky[c].query(v->lo);
                lpm[j][c] = h.kind == RayHit::None ? std::optional<double>(v->lo) : target(h.level, c, h.kind);
            }
        push_row(j);
    }
    pieces_.assign(n_, {});
    for (int c = 0; c < n_; ++c) {
        const auto& f = F_[0].at(c);
        if (!f) continue;
        double L = f->lo, H = f->hi;
        bool Lopen = false, Hopen = false;
        auto& out = pieces_[c];
        std::vector<Piece> right;
        bool alive = true;
        for (int j = 1; j <= m_ && alive; ++j) {
            const auto& v = R_[j].at(c);
            if (!v || v->lo > H || v->hi < L || (v->lo == H && Hopen) || (v->hi == L && Lopen)) {
                out.push_back({L, H, Lopen, Hopen, false, target(j, c, RayHit::T)});
                if (v && v->lo > H) out.back().lpm = target(j, c, RayHit::S);
                alive = false;
                break;
            }
            if (v->lo > L) {
                out.push_back({L, v->lo, Lopen, true, false, target(j, c, RayHit::S)});
                L = v->lo;
                Lopen = false;
            }
            if (v->hi < H) {
                right.push_back({v->hi, H, true, Hopen, false, target(j, c, RayHit::T)});
                H = v->hi;
                Hopen = false;
            }
        }
        if (alive) out.push_back({L, H, Lopen, Hopen, true, std::nullopt});
        out.insert(out.end(), right.rbegin(), right.rend());
    }
}

std::optional<PointerPair> FreeSpaceMap::query(double x) const {
    if (!improved_) throw ContractError("map was built without the improved query payload");
    if (!F_[0].contains(x)) throw ContractError("query point is not feasible on row 0");
    const StartInterval* s = start_of(x);
    if (!s || !s->last || x > *s->last + kSlack) return std::nullopt;
    int c = cell_of(x);
    const auto& ps = pieces_[c];
    const Piece* hit = nullptr;
    auto inside = [x](const Piece& p) {
        bool lo_ok = p.lo_open ? x > p.lo : x >= p.lo - kSlack;
        bool hi_ok = p.hi_open ? x < p.hi : x <= p.hi + kSlack;
        return lo_ok && hi_ok;
    };
    auto it = std::lower_bound(ps.begin(), ps.end(), x, [](const Piece& p, double v) { return p.hi + kSlack < v; });
    for (auto k = it; k != ps.end() && k->lo <= x; ++k)
        if (inside(*k)) {
            hit = &*k;
            break;
        }
    if (!hit && c >= 1 && x == c) {
        for (const auto& p : pieces_[c - 1])
            if (inside(p)) hit = &p;
    }
    if (!hit) return std::nullopt;
    double lp = hit->identity ? x : (hit->lpm ? *hit->lpm : kInfD);
    if (lp == kInfD) return std::nullopt;
    return PointerPair{lp, *s->rpm};
}

}  // namespace frechet
