#include "frechet/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace frechet {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "frechet-instance";
constexpr int kVersion = 1;

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
    return j.at(name);
}

double number(const Json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError("field '" + where + "': expected a number");
    double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError("field '" + where + "': number must be finite");
    return x;
}

int integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError("field '" + where + "': expected an integer");
    return j.get<int>();
}

std::vector<Point> points(const Json& j, const std::string& where, bool allow_empty = false) {
    if (!j.is_array()) throw ParseError("field '" + where + "': expected an array of points");
    if (j.empty() && !allow_empty) throw ParseError("field '" + where + "': needs at least one point");
    std::vector<Point> out;
    for (std::size_t a = 0; a < j.size(); ++a) {
        std::string w = where + "[" + std::to_string(a) + "]";
        const Json& p = j[a];
        if (!p.is_array() || p.empty()) throw ParseError("field '" + w + "': expected a coordinate array");
        Point q;
        for (std::size_t c = 0; c < p.size(); ++c) q.push_back(number(p[c], w));
        if (!out.empty() && q.size() != out[0].size()) throw ParseError("field '" + w + "': dimension differs");
        out.push_back(std::move(q));
    }
    return out;
}

Polyline curve(const Json& j, const char* name) { return Polyline(points(field(j, name), name)); }

Json point_json(const Point& p) {
    Json a = Json::array();
    for (double c : p) a.push_back(c);
    return a;
}

Json points_json(const std::vector<Point>& v) {
    Json a = Json::array();
    for (const auto& p : v) a.push_back(point_json(p));
    return a;
}

std::vector<SpeedLimit> limits(const Json& j, const std::string& where, std::size_t segs) {
    if (!j.is_array() || j.size() != segs)
        throw ParseError("field '" + where + "': expected " + std::to_string(segs) + " [vmin, vmax] pairs");
    std::vector<SpeedLimit> out;
    for (std::size_t a = 0; a < j.size(); ++a) {
        std::string w = where + "[" + std::to_string(a) + "]";
        if (!j[a].is_array() || j[a].size() != 2) throw ParseError("field '" + w + "': expected [vmin, vmax]");
        SpeedLimit s;
        s.vmin = number(j[a][0], w);
        s.vmax = j[a][1].is_null() ? kInf : number(j[a][1], w);
        out.push_back(s);
    }
    return out;
}

Json limits_json(const std::vector<SpeedLimit>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(Json::array({s.vmin, std::isinf(s.vmax) ? Json(nullptr) : Json(s.vmax)}));
    return a;
}

Literal literal(int x, int vars, const std::string& where) {
    if (x == 0 || std::abs(x) > vars) throw ParseError(where + ": literal " + std::to_string(x) + " out of range");
    return {std::abs(x) - 1, x < 0};
}

SatFormula formula_json(const Json& j) {
    SatFormula phi;
    phi.vars = integer(field(j, "vars"), "vars");
    if (phi.vars < 1) throw ParseError("field 'vars': must be positive");
    const Json& cl = field(j, "clauses");
    if (!cl.is_array() || cl.empty()) throw ParseError("field 'clauses': expected a non-empty array");
    for (std::size_t c = 0; c < cl.size(); ++c) {
        std::string w = "field 'clauses[" + std::to_string(c) + "]'";
        if (!cl[c].is_array() || cl[c].size() != 3) throw ParseError(w + ": expected exactly 3 literals");
        std::array<Literal, 3> lits;
        for (int q = 0; q < 3; ++q) lits[q] = literal(integer(cl[c][q], "clauses"), phi.vars, w);
        phi.clauses.push_back(lits);
    }
    return phi;
}

Json formula_to_json(const SatFormula& phi) {
    Json cl = Json::array();
    for (const auto& c : phi.clauses) {
        Json a = Json::array();
        for (const auto& l : c) a.push_back(l.negated ? -(l.var + 1) : l.var + 1);
        cl.push_back(a);
    }
    return Json{{"vars", phi.vars}, {"clauses", cl}};
}

InstanceKind kind_of(const std::string& s) {
    for (auto k : {InstanceKind::Curves, InstanceKind::ClosedCurves, InstanceKind::Curve, InstanceKind::PointSet,
                   InstanceKind::Dag, InstanceKind::Formula})
        if (s == kind_name(k)) return k;
    throw ParseError("field 'kind': unknown kind '" + s + "'");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

const char* kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::Curves: return "curves";
        case InstanceKind::ClosedCurves: return "closed-curves";
        case InstanceKind::Curve: return "curve";
        case InstanceKind::PointSet: return "pointset";
        case InstanceKind::Dag: return "dag";
        case InstanceKind::Formula: return "formula";
    }
    return "?";
}

InstanceDoc parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("document is not valid JSON: ") + e.what());
    }
    const Json& fmt = field(j, "format");
    if (!fmt.is_string() || fmt.get<std::string>() != kFormat) throw ParseError("field 'format': expected \"frechet-instance\"");
    if (integer(field(j, "version"), "version") != kVersion) throw ParseError("field 'version': unsupported version");
    const Json& kind = field(j, "kind");
    if (!kind.is_string()) throw ParseError("field 'kind': expected a string");
    InstanceDoc d;
    d.kind = kind_of(kind.get<std::string>());
    switch (d.kind) {
        case InstanceKind::Curves:
        case InstanceKind::ClosedCurves:
            d.P = curve(j, "P");
            d.Q = curve(j, "Q");
            if (d.P.dim() != d.Q.dim()) throw ParseError("field 'Q': dimension differs from P");
            if (j.contains("speed")) {
                const Json& s = j.at("speed");
                SpeedProfiles pr;
                pr.P = limits(field(s, "P"), "speed.P", d.P.segments());
                pr.Q = limits(field(s, "Q"), "speed.Q", d.Q.segments());
                d.speed = pr;
            }
            break;
        case InstanceKind::Curve:
            d.P = curve(j, "curve");
            break;
        case InstanceKind::PointSet:
            d.P = curve(j, "P");
            d.S = points(field(j, "S"), "S");
            if (d.S[0].size() != d.P.dim()) throw ParseError("field 'S': dimension differs from P");
            if (j.contains("eps")) d.eps = number(j.at("eps"), "eps");
            if (j.contains("all_points")) {
                if (!j.at("all_points").is_boolean()) throw ParseError("field 'all_points': expected a boolean");
                d.all_points = j.at("all_points").get<bool>();
            }
            break;
        case InstanceKind::Dag: {
            d.P = curve(j, "P");
            if (j.contains("eps")) d.eps = number(j.at("eps"), "eps");
            const Json& g = field(j, "dag");
            auto verts = points(field(g, "vertices"), "dag.vertices");
            if (verts[0].size() != d.P.dim()) throw ParseError("field 'dag.vertices': dimension differs from P");
            const Json& e = field(g, "edges");
            if (!e.is_array()) throw ParseError("field 'dag.edges': expected an array");
            std::vector<std::pair<int, int>> edges;
            for (std::size_t a = 0; a < e.size(); ++a) {
                std::string w = "dag.edges[" + std::to_string(a) + "]";
                if (!e[a].is_array() || e[a].size() != 2) throw ParseError("field '" + w + "': expected [from, to]");
                int x = integer(e[a][0], w), y = integer(e[a][1], w);
                int V = static_cast<int>(verts.size());
                if (x < 0 || y < 0 || x >= V || y >= V) throw ParseError("field '" + w + "': vertex index out of range");
                edges.push_back({x, y});
            }
            d.dag = GeometricDag(std::move(verts), std::move(edges));
            break;
        }
        case InstanceKind::Formula:
            d.formula = formula_json(field(j, "formula"));
            break;
    }
    return d;
}

std::string write_instance(const InstanceDoc& d) {
    Json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["kind"] = kind_name(d.kind);
    switch (d.kind) {
        case InstanceKind::Curves:
        case InstanceKind::ClosedCurves:
            j["P"] = points_json(d.P.vertices());
            j["Q"] = points_json(d.Q.vertices());
            if (d.speed) j["speed"] = Json{{"P", limits_json(d.speed->P)}, {"Q", limits_json(d.speed->Q)}};
            break;
        case InstanceKind::Curve:
            j["curve"] = points_json(d.P.vertices());
            break;
        case InstanceKind::PointSet:
            j["P"] = points_json(d.P.vertices());
            j["S"] = points_json(d.S);
            if (d.eps) j["eps"] = *d.eps;
            j["all_points"] = d.all_points;
            break;
        case InstanceKind::Dag: {
            j["P"] = points_json(d.P.vertices());
            if (d.eps) j["eps"] = *d.eps;
            Json e = Json::array();
            for (const auto& [a, b] : d.dag.edges()) e.push_back(Json::array({a, b}));
            j["dag"] = Json{{"vertices", points_json(d.dag.vertices())}, {"edges", e}};
            break;
        }
        case InstanceKind::Formula:
            j["formula"] = formula_to_json(d.formula);
            break;
    }
    return j.dump(2) + "\n";
}

InstanceDoc read_instance_file(const std::string& path) { return parse_instance(slurp(path)); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file '" + path + "'");
    out << text;
}

SatFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SatFormula phi;
    int declared = -1, lineno = 0;
    std::vector<int> pending;
    auto flush = [&](int at) {
        if (pending.size() != 3)
            throw ParseError("line " + std::to_string(at) + ": clause has " + std::to_string(pending.size()) +
                             " literals, only 3-literal clauses are accepted");
        std::array<Literal, 3> c;
        for (int q = 0; q < 3; ++q) c[q] = literal(pending[q], phi.vars, "line " + std::to_string(at));
        phi.clauses.push_back(c);
        pending.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%') continue;
        if (tok == "p") {
            std::string fmt;
            if (declared >= 0) throw ParseError("line " + std::to_string(lineno) + ": second problem line");
            if (!(ls >> fmt >> phi.vars >> declared) || fmt != "cnf" || phi.vars < 1 || declared < 1)
                throw ParseError("line " + std::to_string(lineno) + ": expected 'p cnf <vars> <clauses>'");
            continue;
        }
        if (declared < 0) throw ParseError("line " + std::to_string(lineno) + ": clause before the 'p cnf' header");
        ls.clear();
        ls.str(line);
        while (ls >> tok) {
            int x;
            try {
                std::size_t used = 0;
                x = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad literal '" + tok + "'");
            }
            if (x == 0) flush(lineno);
            else pending.push_back(x);
        }
    }
    if (declared < 0) throw ParseError("missing 'p cnf' header");
    if (!pending.empty()) flush(lineno);
    if (static_cast<int>(phi.clauses.size()) != declared)
        throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(phi.clauses.size()));
    return phi;
}

std::string write_dimacs(const SatFormula& phi) {
    std::ostringstream out;
    out << "p cnf " << phi.vars << ' ' << phi.clauses.size() << '\n';
    for (const auto& c : phi.clauses) {
        for (const auto& l : c) out << (l.negated ? -(l.var + 1) : l.var + 1) << ' ';
        out << "0\n";
    }
    return out.str();
}

SatFormula read_formula_file(const std::string& path) {
    std::string text = slurp(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        auto d = parse_instance(text);
        if (d.kind != InstanceKind::Formula) throw ParseError("field 'kind': expected \"formula\"");
        return d.formula;
    }
    return parse_dimacs(text);
}

InstanceDoc pointset_doc(const CpmInstance& inst) {
    InstanceDoc d;
    d.kind = InstanceKind::PointSet;
    d.P = inst.P;
    d.S = inst.S;
    d.eps = inst.eps;
    d.all_points = inst.all_points;
    return d;
}

CpmInstance cpm_instance(const InstanceDoc& doc) {
    if (doc.kind != InstanceKind::PointSet) throw ParseError("field 'kind': expected \"pointset\"");
    CpmInstance inst;
    inst.S = doc.S;
    inst.P = doc.P;
    inst.eps = doc.eps.value_or(0.0);
    inst.all_points = doc.all_points;
    return inst;
}

}  // namespace frechet
