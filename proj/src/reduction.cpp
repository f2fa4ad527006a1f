#include "frechet/reduction.hpp"

#include <string>

namespace frechet {

namespace {

Point mid(const Point& a, const Point& b) { return lerp(a, b, 0.5); }

Point combo(double wa, const Point& a, double wb, const Point& b) { return {wa * a[0] + wb * b[0], wa * a[1] + wb * b[1]}; }

void append(std::vector<Point>& out, std::initializer_list<Point> pts) { out.insert(out.end(), pts); }

std::vector<Point> clause_path(const Gadget& G, bool use_a, const std::vector<int>& detours) {
    std::vector<bool> det(G.k(), false);
    for (int j : detours) {
        if (j < 0 || j >= G.k()) throw ContractError("detour clause out of range");
        det[j] = true;
    }
    std::vector<Point> out{G.u};
    for (int j = 0; j < G.k(); ++j) {
        const Point& p = use_a ? G.a(j) : G.b(j);
        out.push_back(p);
        if (det[j]) append(out, {G.sq[j].c, p});
    }
    out.push_back(G.v);
    return out;
}

}  // namespace

void validate(const SatFormula& phi) {
    if (phi.vars < 1) throw ContractError("formula needs at least one variable");
    if (phi.clauses.empty()) throw ContractError("formula needs at least one clause");
    for (std::size_t c = 0; c < phi.clauses.size(); ++c)
        for (const auto& l : phi.clauses[c])
            if (l.var < 0 || l.var >= phi.vars)
                throw ContractError("clause " + std::to_string(c + 1) + " uses variable out of range");
}

bool evaluate(const SatFormula& phi, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != phi.vars) throw ContractError("assignment size differs from variable count");
    for (const auto& cl : phi.clauses) {
        bool sat = false;
        for (const auto& l : cl) sat = sat || (assignment[l.var] != l.negated);
        if (!sat) return false;
    }
    return true;
}

std::optional<std::vector<bool>> brute_force_sat(const SatFormula& phi) {
    validate(phi);
    if (phi.vars > 24) throw ContractError("truth table limited to 24 variables");
    std::vector<bool> a(phi.vars);
    for (unsigned long mask = 0; mask < (1UL << phi.vars); ++mask) {
        for (int x = 0; x < phi.vars; ++x) a[x] = (mask >> x) & 1UL;
        if (evaluate(phi, a)) return a;
    }
    return std::nullopt;
}

std::vector<Occurrence> occurrences(const SatFormula& phi, int x) {
    std::vector<Occurrence> occ(phi.clauses.size(), Occurrence::Absent);
    for (std::size_t j = 0; j < phi.clauses.size(); ++j)
        for (const auto& l : phi.clauses[j]) {
            if (l.var != x) continue;
            if (!l.negated) occ[j] = Occurrence::Positive;
            else if (occ[j] == Occurrence::Absent) occ[j] = Occurrence::Negative;
        }
    return occ;
}

std::vector<Point> Gadget::pointset() const {
    std::vector<Point> S;
    for (const auto& q : sq) append(S, {q.s, q.g, q.c});
    append(S, {u, v, t});
    return S;
}

Gadget make_gadget(int k) {
    if (k < 1) throw ContractError("gadget needs at least one clause");
    Gadget G;
    Point g{1.0, 1.0};
    for (int j = 1; j <= k; ++j) {
        ClauseSquare q;
        q.g = g;
        q.s = {g[0] - 2.0, g[1] - 2.0};
        q.o = mid(q.s, q.g);
        if (j % 2 == 1) {
            q.c = {q.s[0], q.g[1]};
            q.w = {q.o[0] + 0.25, q.o[1] - 0.25};
            g = {q.s[0] + 0.25 + 8.0, q.s[1] + 1.75 + 15.0};
        } else {
            q.c = {q.g[0], q.s[1]};
            q.w = {q.o[0] - 0.25, q.o[1] + 0.25};
            g = {q.s[0] + 1.75 + 15.0, q.s[1] + 0.25 + 8.0};
        }
        q.z = mid(q.c, q.w);
        G.sq.push_back(q);
    }
    const Point& o = G.sq.back().o;
    if (k % 2 == 1) {
        G.eta = {o[0] + 1.0, o[1] + 4.0};
        G.v = {o[0] + 1.0, o[1] + 9.0};
    } else {
        G.eta = {o[0] + 4.0, o[1] + 1.0};
        G.v = {o[0] + 9.0, o[1] + 1.0};
    }
    G.u = {-9.0, -1.0};
    G.t = {G.v[0], G.u[1] - 20.0};
    return G;
}

std::vector<Point> variable_curve(const Gadget& G, const std::vector<Occurrence>& occ) {
    if (static_cast<int>(occ.size()) != G.k()) throw ContractError("occurrence pattern length differs from clause count");
    std::vector<Point> out{G.u, {-4.0, -1.0}};
    for (int j = 0; j < G.k(); ++j) {
        const auto& q = G.sq[j];
        bool odd = j % 2 == 0;
        bool enter_s = (occ[j] == Occurrence::Positive && odd) || (occ[j] == Occurrence::Negative && !odd);
        bool enter_g = (occ[j] == Occurrence::Negative && odd) || (occ[j] == Occurrence::Positive && !odd);
        if (enter_s) append(out, {mid(q.s, q.c), q.c, q.w});
        else if (enter_g) append(out, {q.w, q.c, mid(q.g, q.c)});
        else append(out, {q.w, q.c, q.w});
        if (j + 1 < G.k()) {
            const auto& nx = G.sq[j + 1];
            append(out, {combo(0.8, q.g, 0.2, nx.g), combo(0.2, q.s, 0.8, nx.s)});
        }
    }
    append(out, {G.eta, G.v});
    return out;
}

std::vector<Point> a_path(const Gadget& G, const std::vector<int>& detours) { return clause_path(G, true, detours); }
std::vector<Point> b_path(const Gadget& G, const std::vector<int>& detours) { return clause_path(G, false, detours); }

Reduction reduce_3sat(const SatFormula& phi) {
    validate(phi);
    Reduction r;
    r.phi = phi;
    r.gadget = make_gadget(static_cast<int>(phi.clauses.size()));
    const Gadget& G = r.gadget;
    std::vector<Point> P{G.t};
    for (int i = 0; i < phi.vars + 2; ++i) {
        auto occ = i < phi.vars ? occurrences(phi, i) : std::vector<Occurrence>(G.k(), Occurrence::Absent);
        auto l = variable_curve(G, occ);
        P.insert(P.end(), l.begin(), l.end());
        P.push_back(G.t);
    }
    r.instance.S = G.pointset();
    r.instance.P = Polyline(std::move(P));
    r.instance.eps = 1.0;
    r.instance.all_points = true;
    return r;
}

Polyline build_assignment_curve(const SatFormula& phi, const std::vector<bool>& assignment) {
    validate(phi);
    if (static_cast<int>(assignment.size()) != phi.vars) throw ContractError("assignment size differs from variable count");
    Gadget G = make_gadget(static_cast<int>(phi.clauses.size()));
    std::vector<Point> Q{G.t};
    for (int i = 0; i < phi.vars; ++i) {
        std::vector<int> det;
        for (int j = 0; j < G.k(); ++j) {
            bool hit = false;
            for (const auto& l : phi.clauses[j]) hit = hit || (l.var == i && l.negated != assignment[i]);
            if (hit) det.push_back(j);
        }
        auto pi = assignment[i] ? a_path(G, det) : b_path(G, det);
        Q.insert(Q.end(), pi.begin(), pi.end());
        Q.push_back(G.t);
    }
    for (auto pi : {a_path(G), b_path(G)}) {
        Q.insert(Q.end(), pi.begin(), pi.end());
        Q.push_back(G.t);
    }
    return Polyline(std::move(Q));
}

bool verify_feasible(const Polyline& Q, const CpmInstance& inst) {
    validate(inst);
    std::vector<char> used(inst.S.size(), 0);
    for (const auto& q : Q.vertices()) {
        bool member = false;
        for (std::size_t s = 0; s < inst.S.size(); ++s)
            if (q.size() == inst.S[s].size() && dist2(q, inst.S[s]) <= 1e-18) {
                used[s] = 1;
                member = true;
            }
        if (!member) return false;
    }
    if (inst.all_points)
        for (char c : used)
            if (!c) return false;
    return decide_frechet(inst.P, Q, inst.eps);
}

}  // namespace frechet
