#include <cstdio>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frechet/applications.hpp"
#include "frechet/classic.hpp"
#include "frechet/cpm.hpp"
#include "frechet/io.hpp"
#include "frechet/reduction.hpp"
#include "frechet/speed.hpp"
#include "frechet/svg.hpp"

using namespace frechet;

namespace {

struct Options {
    std::vector<std::string> inputs;
    std::optional<double> eps, tolerance, query;
    int resolution = 32, jobs = 1;
    std::string out, assignment;
    bool inside_edges = false;
};

std::string fixed(double x) {
    if (std::isinf(x)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

std::string point_text(const Point& p) {
    std::string s = "(";
    for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + fixed(p[k]);
    return s + ")";
}

double need_eps(const Options& o, std::optional<double> fallback = std::nullopt) {
    if (o.eps) {
        if (*o.eps < 0.0) throw ParseError("option '--eps': must be non-negative");
        return *o.eps;
    }
    if (fallback) return *fallback;
    throw ParseError("option '--eps': required by this subcommand");
}

InstanceDoc curves_doc(const std::string& path) {
    auto d = read_instance_file(path);
    if (d.kind != InstanceKind::Curves && d.kind != InstanceKind::ClosedCurves)
        throw ParseError("field 'kind': expected \"curves\" or \"closed-curves\"");
    return d;
}

SpeedProfiles profiles(const InstanceDoc& d) {
    return d.speed ? *d.speed : SpeedProfiles::unconstrained(d.P.segments(), d.Q.segments());
}

std::string optimum_text(const Optimum& o) { return fixed(o.value) + "\nkind: " + kind_name(o.kind) + "\n"; }

std::string bisection_text(const Options& o, const std::function<bool(double)>& dec, double upper) {
    if (!o.tolerance) return "";
    if (*o.tolerance <= 0.0) throw ParseError("option '--tolerance': must be positive");
    if (dec(0.0)) return "bisection: " + fixed(0.0) + "\n";
    return "bisection: " + fixed(bisect_decision(dec, 0.0, upper, *o.tolerance)) + "\n";
}

std::string yes_no(bool b) { return b ? "YES\n" : "NO\n"; }

std::string match_text(const std::optional<SubcurveMatch>& w) {
    if (!w) return "NO\n";
    return "YES\nsubcurve: [" + fixed(w->start) + ", " + fixed(w->end) + "]\nlength: " + fixed(w->length) + "\n";
}

using Handler = std::function<std::string(const std::string&, const Options&)>;

std::string run_decide(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    return yes_no(decide_frechet(d.P, d.Q, need_eps(o)));
}

std::string run_compute(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    auto opt = compute_frechet(d.P, d.Q);
    return optimum_text(opt) + bisection_text(o, [&](double e) { return decide_frechet(d.P, d.Q, e); },
                                              2.0 * bbox_diagonal({&d.P, &d.Q}) + 1.0);
}

std::string run_weak(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    if (o.eps) return yes_no(decide_weak_frechet(d.P, d.Q, need_eps(o)));
    return fixed(compute_weak_frechet(d.P, d.Q)) + "\n";
}

std::string run_discrete(const std::string& f, const Options&) {
    auto d = curves_doc(f);
    return fixed(discrete_frechet(d.P, d.Q)) + "\n";
}

std::string run_speed_decide(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    return yes_no(decide_speed_fast(d.P, d.Q, profiles(d), need_eps(o)));
}

std::string run_speed_compute(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    auto pr = profiles(d);
    auto opt = compute_speed_frechet(d.P, d.Q, pr);
    return optimum_text(opt) + bisection_text(o, [&](double e) { return decide_speed_simple(d.P, d.Q, pr, e); },
                                              2.0 * bbox_diagonal({&d.P, &d.Q}) + 1.0);
}

std::string run_partial(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    if (!o.eps) return optimum_text(partial_match_optimize(d.P, d.Q));
    return match_text(partial_match(d.P, d.Q, need_eps(o)));
}

std::string run_closed(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    if (!o.eps) return optimum_text(closed_frechet_optimize(d.P, d.Q));
    auto t = closed_frechet_shift(d.P, d.Q, need_eps(o));
    return t ? "YES\nshift: " + fixed(*t) + "\n" : "NO\n";
}

std::string run_maxwalk(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    return match_text(max_walk(d.P, d.Q, need_eps(o)));
}

std::string run_minwalk(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    return match_text(min_walk(d.P, d.Q, need_eps(o)));
}

std::string run_dagmatch(const std::string& f, const Options& o) {
    auto d = read_instance_file(f);
    if (d.kind != InstanceKind::Dag) throw ParseError("field 'kind': expected \"dag\"");
    if (!o.eps && !d.eps) return optimum_text(dag_match_optimize(d.P, d.dag, o.inside_edges));
    auto r = dag_match_decide(d.P, d.dag, need_eps(o, d.eps), o.inside_edges);
    if (!r.matched) return "NO\n";
    std::string s = "YES\n";
    if (r.path) {
        s += "path:";
        for (int v : r.path->vertices) s += " " + std::to_string(v);
        s += "\n";
        if (r.path->head) s += "head: " + point_text(*r.path->head) + "\n";
        if (r.path->tail) s += "tail: " + point_text(*r.path->tail) + "\n";
    }
    return s;
}

CpmInstance read_cpm(const std::string& f, const Options& o) {
    auto doc = read_instance_file(f);
    auto inst = cpm_instance(doc);
    inst.eps = need_eps(o, doc.eps);
    return inst;
}

std::string run_cpm_decide(const std::string& f, const Options& o) {
    auto inst = read_cpm(f, o);
    auto idx = cpm_reconstruct_indices(inst);
    if (!idx) return "NO\n";
    std::string s = "YES\ncurve:";
    for (int v : *idx) s += " " + std::to_string(v);
    s += "\n";
    if (!o.out.empty()) {
        InstanceDoc c;
        c.kind = InstanceKind::Curve;
        c.P = *cpm_reconstruct(inst);
        write_text_file(o.out, write_instance(c));
    }
    return s;
}

std::string run_cpm_compute(const std::string& f, const Options& o) {
    auto d = read_instance_file(f);
    auto inst = cpm_instance(d);
    auto opt = cpm_optimize(inst.S, inst.P);
    Polyline cloud(inst.S);
    return optimum_text(opt) + bisection_text(o,
                                              [&](double e) {
                                                  inst.eps = e;
                                                  return cpm_decide(inst);
                                              },
                                              2.0 * bbox_diagonal({&inst.P, &cloud}) + 1.0);
}

std::string run_reduce(const std::string& f, const Options& o) {
    auto r = reduce_3sat(read_formula_file(f));
    std::string doc = write_instance(pointset_doc(r.instance));
    if (o.out.empty()) return doc;
    write_text_file(o.out, doc);
    return "points: " + std::to_string(r.instance.S.size()) + "\nvertices: " +
           std::to_string(r.instance.P.vertices().size()) + "\neps: " + fixed(r.instance.eps) + "\n";
}

std::vector<bool> parse_assignment(const std::string& s, int vars) {
    std::vector<bool> a;
    for (char c : s) {
        if (c == '0' || c == '1') a.push_back(c == '1');
        else if (c != ',' && c != ' ') throw ParseError("option '--assignment': expected a string of 0/1 digits");
    }
    if (static_cast<int>(a.size()) != vars)
        throw ParseError("option '--assignment': expected " + std::to_string(vars) + " values");
    return a;
}

std::string run_build(const std::string& f, const Options& o) {
    auto phi = read_formula_file(f);
    InstanceDoc c;
    c.kind = InstanceKind::Curve;
    c.P = build_assignment_curve(phi, parse_assignment(o.assignment, phi.vars));
    std::string doc = write_instance(c);
    if (o.out.empty()) return doc;
    write_text_file(o.out, doc);
    return "vertices: " + std::to_string(c.P.vertices().size()) + "\n";
}

std::string run_verify(const Options& o) {
    if (o.inputs.size() != 2) throw ParseError("verify expects an instance file and a curve file");
    auto doc = read_instance_file(o.inputs[0]);
    auto inst = cpm_instance(doc);
    inst.eps = need_eps(o, doc.eps);
    auto q = read_instance_file(o.inputs[1]);
    if (q.kind != InstanceKind::Curve) throw ParseError("field 'kind': expected \"curve\"");
    return verify_feasible(q.P, inst) ? "FEASIBLE\n" : "INFEASIBLE\n";
}

std::string run_render(const std::string& f, const Options& o) {
    auto d = curves_doc(f);
    SvgOptions so;
    so.resolution = o.resolution;
    so.query = o.query;
    if (o.resolution < 2) throw ParseError("option '--resolution': must be at least 2");
    std::string svg = render_free_space_svg(d.P, d.Q, need_eps(o), so);
    if (o.out.empty()) return svg;
    write_text_file(o.out, svg);
    return "wrote " + o.out + "\n";
}

std::string batch(const Handler& h, const Options& o) {
    if (o.inputs.empty()) throw ParseError("missing input file");
    if (o.inputs.size() == 1) return h(o.inputs[0], o);
    if (!o.out.empty()) throw ParseError("option '-o': only valid with a single input");
    std::vector<std::string> out(o.inputs.size());
    std::size_t jobs = static_cast<std::size_t>(std::max(1, o.jobs));
    for (std::size_t base = 0; base < o.inputs.size(); base += jobs) {
        std::vector<std::future<std::string>> fut;
        for (std::size_t k = base; k < std::min(o.inputs.size(), base + jobs); ++k)
            fut.push_back(std::async(std::launch::async, h, o.inputs[k], o));
        for (std::size_t k = 0; k < fut.size(); ++k) out[base + k] = fut[k].get();
    }
    std::string s;
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::istringstream in(out[k]);
        std::string line;
        while (std::getline(in, line)) s += o.inputs[k] + ": " + line + "\n";
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frechet distance toolkit"};
    app.require_subcommand(1, 1);
    Options o;
    struct Cmd {
        const char* name;
        const char* help;
        Handler h;
    };
    std::vector<Cmd> cmds{
        {"decide", "decide distF(P, Q) <= eps", run_decide},
        {"compute", "Frechet distance of a curve pair", run_compute},
        {"weak", "weak Frechet distance, or its decision with --eps", run_weak},
        {"discrete", "discrete Frechet distance", run_discrete},
        {"speed-decide", "decide with speed limits", run_speed_decide},
        {"speed-compute", "speed-constrained Frechet distance", run_speed_compute},
        {"partial", "subcurve of P matching Q", run_partial},
        {"closed", "closed-curve Frechet distance", run_closed},
        {"maxwalk", "longest matching subcurve of P", run_maxwalk},
        {"minwalk", "shortest matching subcurve of P", run_minwalk},
        {"dagmatch", "match P to a path in a geometric DAG", run_dagmatch},
        {"cpm-decide", "curve through a pointset within eps of P", run_cpm_decide},
        {"cpm-compute", "smallest eps for a curve through a pointset", run_cpm_compute},
        {"reduce-3sat", "pointset instance from a 3CNF formula", run_reduce},
        {"build-assignment-curve", "curve for a truth assignment", run_build},
        {"render", "SVG of the free-space diagram", run_render},
    };
    std::string chosen;
    auto add_common = [&](CLI::App* s) {
        s->add_option("inputs", o.inputs, "input files")->required();
        s->add_option("--eps", o.eps, "distance bound");
        s->add_option("--tolerance", o.tolerance, "also report eps-bisection to this tolerance");
        s->add_option("--resolution", o.resolution, "polygon samples per cell side (render)");
        s->add_option("--jobs", o.jobs, "parallel workers for several inputs");
        s->add_option("-o", o.out, "output file");
        s->add_option("--assignment", o.assignment, "truth values as 0/1 digits");
        s->add_option("--query", o.query, "start x on row 0 (render)");
        s->add_flag("--inside-edges", o.inside_edges, "paths may start and end inside DAG edges");
    };
    for (const auto& c : cmds) add_common(app.add_subcommand(c.name, c.help));
    add_common(app.add_subcommand("verify", "check a curve against a pointset instance"));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        std::string name = app.get_subcommands().front()->get_name();
        std::string text;
        if (name == "verify") text = run_verify(o);
        else
            for (const auto& c : cmds)
                if (name == c.name) text = batch(c.h, o);
        std::cout << text;
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 3;
    }
}
