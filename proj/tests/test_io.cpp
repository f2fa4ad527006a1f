#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "frechet/io.hpp"
#include "frechet/svg.hpp"
#include "support.hpp"

using namespace frechet;
using namespace testkit;

namespace fs = std::filesystem;

namespace {

const std::string kData = FRECHET_DATA_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string squeeze(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

struct Run {
    int code = -1;
    std::string out;
};

fs::path scratch() {
    auto d = fs::temp_directory_path() / ("frechet_io_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

Run cli(const std::string& args) {
    auto log = scratch() / "cli.out";
    std::string cmd = std::string("\"") + FRECHET_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    int st = std::system(cmd.c_str());
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(log)};
}

std::string data(const char* name) { return "\"" + kData + "/" + name + "\""; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

bool point_in_polygon(const std::vector<std::pair<double, double>>& poly, double x, double y) {
    bool in = false;
    for (std::size_t a = 0, b = poly.size() - 1; a < poly.size(); b = a++) {
        auto [xa, ya] = poly[a];
        auto [xb, yb] = poly[b];
        if ((ya > y) != (yb > y) && x < (xb - xa) * (y - ya) / (yb - ya) + xa) in = !in;
    }
    return in;
}

std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> svg_polygons(const std::string& svg) {
    std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> out;
    std::regex poly("<polygon data-cell=\"(\\d+),(\\d+)\" points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), poly); it != std::sregex_iterator(); ++it) {
        std::vector<std::pair<double, double>> pts;
        std::istringstream in((*it)[3].str());
        std::string tok;
        while (in >> tok) {
            auto c = tok.find(',');
            pts.push_back({std::stod(tok.substr(0, c)), std::stod(tok.substr(c + 1))});
        }
        out[{std::stoi((*it)[1].str()), std::stoi((*it)[2].str())}] = pts;
    }
    return out;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("instance files round trip") {
    for (const char* f : {"pair.json", "speed.json", "closed.json", "pointset.json", "dag.json", "formula.json"}) {
        CAPTURE(f);
        std::string text = slurp(kData + "/" + f);
        auto doc = parse_instance(text);
        CHECK(squeeze(write_instance(doc)) == squeeze(text));
    }
}

TEST_CASE("numbers are written shortest round trip") {
    InstanceDoc d;
    d.kind = InstanceKind::Curve;
    d.P = Polyline({{0.1, 1.0 / 3.0}, {1e-300, -2.5e17}});
    auto text = write_instance(d);
    CHECK(text.find("0.1,") != std::string::npos);
    auto back = parse_instance(text);
    CHECK(back.P.vertices() == d.P.vertices());
    SpeedProfiles pr{{{0.5, kInf}}, {{0.0, 2.0}}};
    InstanceDoc c;
    c.P = Polyline({{0, 0}, {1, 0}});
    c.Q = Polyline({{0, 1}, {1, 1}});
    c.speed = pr;
    auto again = parse_instance(write_instance(c));
    REQUIRE(again.speed);
    CHECK(std::isinf(again.speed->P[0].vmax));
    CHECK(again.speed->Q[0].vmax == 2.0);
}

TEST_CASE("malformed documents name the field") {
    auto msg = [](const std::string& text) {
        try {
            parse_instance(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    std::string head = R"({"format": "frechet-instance", "version": 1, )";
    CHECK(msg("{").find("JSON") != std::string::npos);
    CHECK(msg(R"({"version": 1})").find("'format'") != std::string::npos);
    CHECK(msg(R"({"format": "frechet-instance", "version": 2, "kind": "curves"})").find("'version'") != std::string::npos);
    CHECK(msg(head + R"("kind": "spline"})").find("'kind'") != std::string::npos);
    CHECK(msg(head + R"("kind": "curves", "P": [[0, 0]]})").find("'Q'") != std::string::npos);
    CHECK(msg(head + R"("kind": "curves", "P": [[0, 0]], "Q": [[0, "x"]]})").find("'Q[0]'") != std::string::npos);
    CHECK(msg(head + R"("kind": "curves", "P": [[0, 0]], "Q": [[0, 0, 1]]})").find("'Q'") != std::string::npos);
    CHECK(msg(head + R"("kind": "curves", "P": [[0, 0], [1, 0]], "Q": [[0, 0]], "speed": {"P": [], "Q": []}})")
              .find("'speed.P'") != std::string::npos);
    CHECK(msg(head + R"("kind": "dag", "P": [[0, 0]], "dag": {"vertices": [[0, 0]], "edges": [[0, 3]]}})")
              .find("'dag.edges[0]'") != std::string::npos);
    CHECK(msg(head + R"("kind": "formula", "formula": {"vars": 2, "clauses": [[1, 2]]}})").find("clauses[0]") !=
          std::string::npos);
}

TEST_CASE("dimacs") {
    auto phi = parse_dimacs(slurp(kData + "/formula.cnf"));
    CHECK(phi.vars == 3);
    REQUIRE(phi.clauses.size() == 4);
    CHECK(phi.clauses[0][1].var == 1);
    CHECK(phi.clauses[0][1].negated);
    CHECK(write_dimacs(parse_dimacs(write_dimacs(phi))) == write_dimacs(phi));
    auto json = parse_instance(slurp(kData + "/formula.json")).formula;
    CHECK(write_dimacs(json) == write_dimacs(phi));
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 2 1\n1 2 0\n"), doctest::Contains("only 3-literal clauses"), ParseError);
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 2 1\n1 2 5 0\n"), doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_WITH_AS(parse_dimacs("1 2 3 0\n"), doctest::Contains("header"), ParseError);
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), doctest::Contains("declares 2"), ParseError);
    CHECK(parse_dimacs("p cnf 3 1\n1 2\n 3 0\n").clauses.size() == 1);
}

TEST_CASE("svg rendering") {
    Polyline P({{0, 0}, {1, 0}, {2, 1}}), Q({{0, 0.2}, {2, 1.2}});
    auto a = render_free_space_svg(P, Q, 0.5), b = render_free_space_svg(P, Q, 0.5);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
    auto big = svg_polygons(render_free_space_svg(P, Q, 100.0));
    CHECK(big.size() == 2);
    for (const auto& [cell, poly] : big)
        for (auto [x, y] : std::vector<std::pair<double, double>>{{0.001, 0.001}, {0.999, 0.999}, {0.001, 0.999}})
            CHECK(point_in_polygon(poly, cell.first + x, cell.second + y));
    Polyline R({{0, 0}, {1, 0}, {1, 1}, {3, 1}});
    auto diag = svg_polygons(render_free_space_svg(R, R, 0.0));
    for (const auto& [cell, poly] : diag) CHECK(cell.first == cell.second);
    std::mt19937 rng(1);
    Polyline huge_p = random_curve(rng, 101), huge_q = random_curve(rng, 100);
    CHECK_THROWS_AS(render_free_space_svg(huge_p, huge_q, 1.0), ContractError);
}

TEST_CASE("svg regions match cell membership") {
    std::mt19937 rng(81);
    int checked = 0;
    for (int rep = 0; rep < 10; ++rep) {
        auto P = random_curve(rng, 3), Q = random_curve(rng, 3);
        double eps = rand_real(rng, 1.0, 5.0);
        auto polys = svg_polygons(render_free_space_svg(P, Q, eps, {48, 64, false, std::nullopt}));
        for (int s = 0; s < 400; ++s) {
            int i = rand_int(rng, 0, 2), j = rand_int(rng, 0, 2);
            double x = rand_real(rng, 0, 1), y = rand_real(rng, 0, 1);
            auto in = [&](double e) { return cell_free_space_membership(P.vertex(i), P.vertex(i + 1), Q.vertex(j), Q.vertex(j + 1), x, y, e); };
            bool want = in(eps);
            if (want != in(eps * 0.99) || want != in(eps * 1.01)) continue;
            auto it = polys.find({i, j});
            bool got = it != polys.end() && point_in_polygon(it->second, i + x, j + y);
            CHECK(got == want);
            ++checked;
        }
    }
    CHECK(checked > 3000);
}

TEST_CASE("cli decisions and computations") {
    auto r = cli("compute " + data("pair.json"));
    CHECK(r.code == 0);
    auto doc = read_instance_file(kData + "/pair.json");
    auto opt = compute_frechet(doc.P, doc.Q);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", opt.value);
    CHECK(first_line(r.out) == buf);
    CHECK(r.out.find(std::string("kind: ") + kind_name(opt.kind)) != std::string::npos);

    auto same = scratch() / "same.json";
    InstanceDoc id;
    id.P = doc.P;
    id.Q = doc.P;
    write_text_file(same.string(), write_instance(id));
    CHECK(first_line(cli("compute \"" + same.string() + "\"").out) == "0.000000000000");

    for (double e : {opt.value * 0.9, opt.value * 1.1})
        CHECK(first_line(cli("decide " + data("pair.json") + " --eps " + std::to_string(e)).out) ==
              (decide_frechet(doc.P, doc.Q, e) ? "YES" : "NO"));
    auto closed = read_instance_file(kData + "/closed.json");
    CHECK(first_line(cli("closed " + data("closed.json") + " --eps 1").out) ==
          (closed_frechet_decide(closed.P, closed.Q, 1.0) ? "YES" : "NO"));
    auto dag = read_instance_file(kData + "/dag.json");
    CHECK(first_line(cli("dagmatch " + data("dag.json")).out) ==
          (dag_match_decide(dag.P, dag.dag, *dag.eps).matched ? "YES" : "NO"));
    auto ps = cpm_instance(read_instance_file(kData + "/pointset.json"));
    CHECK(first_line(cli("cpm-decide " + data("pointset.json")).out) == (cpm_decide(ps) ? "YES" : "NO"));
    auto sp = read_instance_file(kData + "/speed.json");
    CHECK(first_line(cli("speed-decide " + data("speed.json") + " --eps 1.5").out) ==
          (decide_speed_simple(sp.P, sp.Q, *sp.speed, 1.5) ? "YES" : "NO"));
    for (const char* c : {"partial", "maxwalk", "minwalk"})
        CHECK(first_line(cli(std::string(c) + " " + data("pair.json") + " --eps 1").out) ==
              (partial_match_decide(doc.P, doc.Q, 1.0) ? "YES" : "NO"));
    auto t = cli("compute " + data("pair.json") + " --tolerance 1e-9");
    CHECK(t.out.find("bisection: ") != std::string::npos);
    auto batch = cli("decide " + data("pair.json") + " " + data("speed.json") + " --eps 10 --jobs 2");
    CHECK(batch.code == 0);
    CHECK(std::count(batch.out.begin(), batch.out.end(), '\n') == 2);
}

TEST_CASE("cli reduction pipeline") {
    auto dir = scratch();
    auto inst = (dir / "inst.json").string(), q = (dir / "q.json").string();
    CHECK(cli("reduce-3sat " + data("formula.cnf") + " -o \"" + inst + "\"").code == 0);
    CHECK(cli("build-assignment-curve " + data("formula.json") + " --assignment 100 -o \"" + q + "\"").code == 0);
    auto r = reduce_3sat(parse_dimacs(slurp(kData + "/formula.cnf")));
    auto doc = read_instance_file(inst);
    CHECK(doc.S == r.instance.S);
    CHECK(doc.P.vertices() == r.instance.P.vertices());
    auto Q = read_instance_file(q).P;
    std::string want = verify_feasible(Q, r.instance) ? "FEASIBLE" : "INFEASIBLE";
    CHECK(first_line(cli("verify \"" + inst + "\" \"" + q + "\"").out) == want);

    auto small = (dir / "small.json").string(), line = (dir / "line.json").string();
    CpmInstance c{{{0, 0}, {1, 0}}, Polyline({{0, 0}, {1, 0}}), 0.0, true};
    write_text_file(small, write_instance(pointset_doc(c)));
    InstanceDoc ld;
    ld.kind = InstanceKind::Curve;
    ld.P = Polyline({{0, 0}, {1, 0}});
    write_text_file(line, write_instance(ld));
    CHECK(first_line(cli("verify \"" + small + "\" \"" + line + "\"").out) == "FEASIBLE");
}

TEST_CASE("cli exit codes") {
    CHECK(cli("decide " + data("pair.json")).code == 2);
    CHECK(cli("decide " + data("formula.cnf") + " --eps 1").code == 2);
    CHECK(cli("nonsense").code == 2);
    CHECK(cli("dagmatch " + data("cyclic.json")).code == 3);
    CHECK(cli("build-assignment-curve " + data("formula.cnf") + " --assignment 10").code == 2);
    auto svg = (scratch() / "fs.svg").string();
    auto r = cli("render " + data("pair.json") + " --eps 0.5 -o \"" + svg + "\"");
    CHECK(r.code == 0);
    CHECK(slurp(svg).find("</svg>") != std::string::npos);
}

}
