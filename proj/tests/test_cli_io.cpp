#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <regex>

#include "lpp/busemann.hpp"
#include "lpp/cli.hpp"
#include "lpp/error.hpp"
#include "lpp/graphs.hpp"
#include "lpp/io.hpp"
#include "lpp/stats.hpp"
#include "lpp/svg.hpp"

using namespace lpp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("lpp_cli_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int lppsim(std::vector<std::string> args) {
    args.insert(args.begin(), "lppsim");
    return run(args);
}

struct Scene {
    std::vector<BusemannField> B;
    GeodesicGraph lo, hi;
    InstabilityGraph ig;
};

Scene make_scene(double a, double b, std::int64_t side, std::uint64_t seed) {
    const Environment env(seed);
    const bool point = a == b;
    const DirectionSpec d[2] = {{Direction(a), point ? Sign::None : Sign::Minus}, {Direction(b), point ? Sign::None : Sign::Plus}};
    Scene s;
    s.B = horizon_busemann_fields(LatticeWindow::square(0, side), d, 512, env);
    s.lo = geodesic_graph(s.B[0]);
    s.hi = geodesic_graph(s.B[1]);
    s.ig = instability_graph(s.B[0], s.B[1]);
    return s;
}

}  // namespace

TEST_CASE("edge list roundtrip") {
    const std::vector<EdgeRecord> primal{{{0, 0}, {1, 0}, 0.0, false}, {{-3, 5}, {-3, 6}, 0.0, false}};
    bool dual = true;
    CHECK(decode_edge_list(encode_edge_list(primal, false), &dual) == primal);
    CHECK_FALSE(dual);

    const std::vector<EdgeRecord> dualE{{{2, 3}, {2, 2}, 0.1 + 0.2, true}, {{0, 0}, {-1, 0}, 1e-300, true}};
    const auto text = encode_edge_list(dualE, true);
    CHECK(text.find("2.5\t3.5\t2.5\t2.5") != std::string::npos);
    CHECK(decode_edge_list(text, &dual) == dualE);
    CHECK(dual);

    TempDir t;
    save_edge_list(dualE, true, t / "e.tsv");
    CHECK(load_edge_list(t / "e.tsv") == dualE);
}

TEST_CASE("edge list format errors") {
    CHECK_THROWS_AS(decode_edge_list("# lattice=primal\n1\t2\t3\n"), FormatError);
    CHECK_THROWS_AS(decode_edge_list("# lattice=primal\n1\t2\tx\t4\n"), FormatError);
    CHECK_THROWS_AS(decode_edge_list("# lattice=primal\n1\t2\t3\t4\tmass\n"), FormatError);
    // half-integer coordinates belong to the dual lattice only
    CHECK_THROWS_AS(decode_edge_list("# lattice=primal\n0.5\t0.5\t1.5\t0.5\n"), FormatError);
    CHECK_THROWS_AS(decode_edge_list("# lattice=dual\n0\t0\t1\t0\n"), FormatError);
    try {
        decode_edge_list("# lattice=primal\n0\t0\t1\t0\n1\t2\n");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.offset() > 0);
    }
}

TEST_CASE("atomic write") {
    TempDir t;
    const auto p = t / "out.txt";
    write_file_atomic(p, "first");
    CHECK(read_file(p) == "first");
    write_file_atomic(p, "second");
    CHECK(read_file(p) == "second");
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(t.path)) n += e.is_regular_file();
    CHECK(n == 1);
    CHECK_THROWS_AS(read_file(t / "missing"), Error);
    CHECK_THROWS_AS(write_file_atomic(t / "no/such/dir/x", "y"), Error);
}

TEST_CASE("format_double round trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("argument parsers") {
    const auto w = parse_window("0:9,-2:3");
    CHECK(w.x_min == 0);
    CHECK(w.x_max == 9);
    CHECK(w.y_min == -2);
    CHECK(w.y_max == 3);
    CHECK(parse_window("1:4") == LatticeWindow::square(1, 4));
    CHECK_THROWS_AS(parse_window("4:1"), Error);
    CHECK_THROWS_AS(parse_window("abc"), ConfigError);
    CHECK(parse_site("3,-4") == Site{3, -4});
    CHECK_THROWS_AS(parse_site("3"), ConfigError);
    const auto r = parse_range("0.25:0.75");
    CHECK(r.first == 0.25);
    CHECK(r.second == 0.75);
    CHECK_THROWS_AS(parse_range("0.25"), ConfigError);
}

TEST_CASE("config file parsing") {
    const auto kv = parse_config_file("# comment\ncommand = verify\n\nsuite=quick  # trailing\nseed=3\n");
    CHECK(kv.at("command") == "verify");
    CHECK(kv.at("suite") == "quick");
    CHECK(kv.at("seed") == "3");
    CHECK(kv.size() == 3);
    CHECK_THROWS_AS(parse_config_file("novalue\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_file("=x\n"), ConfigError);
}

TEST_CASE("command line errors") {
    CHECK(lppsim({"verify", "--no-such-flag"}) == 2);
    CHECK(lppsim({"frobnicate"}) == 2);
    CHECK(lppsim({"verify", "--suite", "quick", "--tests", "nope"}) == 2);
    CHECK(lppsim({"busemann", "--alpha", "1.5"}) == 2);
    CHECK(lppsim({"simulate"}) == 2);
    CHECK(lppsim({"stats"}) == 2);
}

TEST_CASE("verify is reproducible and reports failures through the exit code") {
    TempDir t;
    const int a = lppsim({"verify", "--suite", "quick", "--out", t / "a.json"});
    const int b = lppsim({"verify", "--suite", "quick", "--out", t / "b.json"});
    CHECK(a == b);
    CHECK(read_file(t / "a.json") == read_file(t / "b.json"));
    const auto j = Json::parse(read_file(t / "a.json"));
    CHECK(a == (j["fail_count"].get<int>() > 0 ? 1 : 0));

    CHECK(lppsim({"verify", "--suite", "quick", "--tests", "structural_invariants", "--out", t / "c.json"}) == 0);
    CHECK(Json::parse(read_file(t / "c.json"))["reports"].size() == 1);
}

TEST_CASE("config file feeds the command line") {
    TempDir t;
    write_file_atomic(t / "run.cfg", "command=verify\nsuite=quick\ntests=structural_invariants,palm_ssrw\nseed=5\n");
    CHECK(lppsim({"--config", t / "run.cfg", "--out", t / "a.json"}) == 0);
    const auto j = Json::parse(read_file(t / "a.json"));
    CHECK(j["master_seed"] == 5);
    CHECK(j["reports"].size() == 2);
    // flags on the command line win
    CHECK(lppsim({"verify", "--config", t / "run.cfg", "--seed", "9", "--out", t / "b.json"}) == 0);
    CHECK(Json::parse(read_file(t / "b.json"))["master_seed"] == 9);
    CHECK(lppsim({"--config", t / "missing.cfg"}) == 2);
}

TEST_CASE("simulate, busemann and graphs write their outputs") {
    TempDir t;
    CHECK(lppsim({"simulate", "--window", "0:47", "--seed", "3", "--out", t / "f.bin", "--tsv", t / "f.tsv"}) == 0);
    CHECK(fs::file_size(t / "f.bin") > 48 * 48 * 8);
    CHECK(lppsim({"busemann", "--window", "0:15", "--field", t / "f.bin", "--alpha", "0.5", "--horizon", "40", "--out",
                  t / "b.json"}) == 0);
    auto j = Json::parse(read_file(t / "b.json"));
    CHECK(j["recovery_residual"].get<double>() < 1e-9);
    CHECK(j["cocycle_residual"].get<double>() < 1e-9);

    // a field file and the seed it was sampled from give the same answer
    CHECK(lppsim({"busemann", "--window", "0:15", "--seed", "3", "--alpha", "0.5", "--horizon", "40", "--out",
                  t / "b2.json"}) == 0);
    CHECK(read_file(t / "b.json") == read_file(t / "b2.json"));
    // the field must cover every site below the target level
    CHECK(lppsim({"busemann", "--window", "0:15", "--field", t / "f.bin", "--alpha", "0.5", "--horizon", "100"}) == 2);
    // the target has to sit strictly beyond the window
    CHECK(lppsim({"busemann", "--window", "0:15", "--alpha", "0.4", "--sign", "minus", "--horizon", "40"}) == 2);

    CHECK(lppsim({"graphs", "--window", "0:15", "--seed", "3", "--interval", "0.3:0.7", "--horizon", "256", "--edges",
                  t / "e.tsv", "--svg", t / "g.svg", "--out", t / "g.json"}) == 0);
    j = Json::parse(read_file(t / "g.json"));
    CHECK(j["degree_violations"] == 0);
    CHECK(j["no_cross_violations"] == 0);
    bool dual = false;
    CHECK(load_edge_list(t / "e.tsv", &dual).size() == j["instability_edges"].get<std::size_t>());
    CHECK(dual);
    CHECK(read_file(t / "g.svg").rfind("<?xml", 0) == 0);
}

TEST_CASE("scan-jumps output") {
    TempDir t;
    CHECK(lppsim({"scan-jumps", "--seed", "2", "--edge", "0,0:1,0", "--alpha", "0.2:0.8", "--horizon", "512", "--out",
                  t / "j.json"}) == 0);
    const auto j = Json::parse(read_file(t / "j.json"));
    REQUIRE(j.is_array());
    double prev = 0.0;
    for (const auto& r : j) {
        const double a = r["alpha_star"].get<double>();
        CHECK(a >= prev);
        CHECK(a > 0.0);
        CHECK(a < 1.0);
        CHECK(r["gap"].get<double>() > 0.0);
        CHECK(r["k_plus"].get<std::int64_t>() == r["k_minus"].get<std::int64_t>() + 1);
        prev = a;
    }
    CHECK(lppsim({"scan-jumps", "--edge", "0,0:1,1"}) == 2);
}

TEST_CASE("svg with no instability edges is a bare frame") {
    const auto s = make_scene(0.5, 0.5, 7, 1);
    CHECK(s.ig.edge_count() == 0);
    const auto svg = render_svg({nullptr, nullptr, &s.ig, nullptr});
    CHECK(svg.find("<rect class=\"frame\"") != std::string::npos);
    CHECK(svg.find("<line") == std::string::npos);
    CHECK(svg.find("<circle") == std::string::npos);
}

TEST_CASE("svg instability edges cross primal edges missing from the intersection") {
    const auto s = make_scene(0.3, 0.7, 15, 4);
    REQUIRE(s.ig.edge_count() > 0);
    const auto pts = classify_points(s.ig, s.B[0], s.B[1]);
    RenderOptions o;
    o.cell = 10.0;
    o.margin = 0.0;
    const auto svg = render_svg({&s.lo, &s.hi, &s.ig, &pts}, o);
    CHECK(svg == render_svg({&s.lo, &s.hi, &s.ig, &pts}, o));

    const auto& w = s.ig.window;
    const std::regex re("<line class=\"inst\" x1=\"([-0-9.]+)\" y1=\"([-0-9.]+)\" x2=\"([-0-9.]+)\" y2=\"([-0-9.]+)\"/>");
    std::size_t count = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        ++count;
        const auto lx = [&](int i) { return std::stod((*it)[i].str()) / o.cell - 0.5 + double(w.x_min); };
        const auto ly = [&](int i) { return double(w.y_max) + 0.5 - std::stod((*it)[i].str()) / o.cell; };
        const double mx = (lx(1) + lx(3)) / 2, my = (ly(2) + ly(4)) / 2;
        // the midpoint of a dual edge is the midpoint of the primal edge it crosses
        const bool vertical_dual = std::abs(lx(1) - lx(3)) < 1e-9;
        const Site x{std::llround(vertical_dual ? mx - 0.5 : mx), std::llround(vertical_dual ? my : my - 0.5)};
        REQUIRE(w.contains(x));
        const Step want = vertical_dual ? Step::E1 : Step::E2;
        const auto i = w.index(x);
        CHECK_FALSE((s.lo.step[i] == want && s.hi.step[i] == want));
    }
    CHECK(count == s.ig.edge_count());
    CHECK(svg.find("class=\"geo-lo\"") != std::string::npos);
    CHECK(svg.find("class=\"geo-hi\"") != std::string::npos);
}

TEST_CASE("svg argument errors") {
    InstabilityGraph empty;
    empty.window = LatticeWindow{1, 0, 0, 0};
    CHECK_THROWS_AS(render_svg({nullptr, nullptr, &empty, nullptr}), InvalidWindow);
    CHECK_THROWS_AS(render_svg({}), DomainError);
    const auto a = make_scene(0.3, 0.7, 7, 1);
    const auto b = make_scene(0.3, 0.7, 9, 1);
    CHECK_THROWS_AS(render_svg({&b.lo, nullptr, &a.ig, nullptr}), DomainError);
}
