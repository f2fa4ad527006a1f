#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "frechet/classic.hpp"
#include "frechet/geometry.hpp"
#include "frechet/speed.hpp"

namespace testkit {

using namespace frechet;

inline Polyline random_curve(std::mt19937& rng, int segs, double lo = 0.0, double hi = 10.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<Point> v;
    for (int k = 0; k <= segs; ++k) v.push_back({u(rng), u(rng)});
    return Polyline(v);
}

inline int rand_int(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double rand_real(std::mt19937& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Midpoint of a critical gap wider than min_gap, chosen with probability proportional to width.
inline double guarded_eps(std::vector<double> crit, std::mt19937& rng, double min_gap = 1e-5) {
    std::sort(crit.begin(), crit.end());
    double top = crit.empty() ? 1.0 : std::max(crit.back(), 1e-3) * 1.1;
    std::vector<double> pts{0.0};
    for (double c : crit) pts.push_back(c);
    pts.push_back(top);
    for (int tries = 0; tries < 1000; ++tries) {
        double x = rand_real(rng, 0.0, top);
        auto it = std::upper_bound(pts.begin(), pts.end(), x);
        if (it == pts.begin() || it == pts.end()) continue;
        double hi = *it, lo = *(it - 1);
        if (hi - lo > min_gap) return 0.5 * (lo + hi);
    }
    return top;
}

inline std::vector<double> values(const std::vector<CriticalValue>& c) {
    std::vector<double> v;
    for (const auto& x : c) v.push_back(x.value);
    return v;
}

inline SpeedProfiles random_profiles(std::mt19937& rng, const Polyline& P, const Polyline& Q) {
    SpeedProfiles pr;
    auto one = [&](const Polyline& C, std::vector<SpeedLimit>& out) {
        for (std::size_t k = 0; k < C.segments(); ++k) {
            double len = C.seg_length(k);
            int kind = rand_int(rng, 0, 5);
            double a = rand_real(rng, 0.2, 1.5) * len, b = rand_real(rng, 0.2, 1.5) * len;
            if (a > b) std::swap(a, b);
            if (kind == 0) out.push_back({0.0, kInf});
            else if (kind == 1) out.push_back({0.0, b});
            else if (kind == 2) out.push_back({a, kInf});
            else out.push_back({a, b});
        }
    };
    one(P, pr.P);
    one(Q, pr.Q);
    return pr;
}

}  // namespace testkit
