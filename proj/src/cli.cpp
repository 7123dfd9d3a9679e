#include "lpp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "lpp/acceptance.hpp"
#include "lpp/busemann.hpp"
#include "lpp/error.hpp"
#include "lpp/graphs.hpp"
#include "lpp/io.hpp"
#include "lpp/kernels.hpp"
#include "lpp/stats.hpp"
#include "lpp/svg.hpp"
#include "lpp/weight_field.hpp"

namespace lpp {

const char* to_string(Command c) {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Busemann: return "busemann";
        case Command::Graphs: return "graphs";
        case Command::ScanJumps: return "scan-jumps";
        case Command::Stats: return "stats";
        case Command::Verify: return "verify";
    }
    return "?";
}

namespace {

std::int64_t to_i64(const std::string& s) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw ConfigError("not an integer: '" + s + "'");
    return v;
}

double to_f64(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char c) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, c)) out.push_back(cur);
    if (!s.empty() && s.back() == c) out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::pair<double, double> parse_range(const std::string& s) {
    const auto p = split(s, ':');
    if (p.size() != 2) throw ConfigError("expected lo:hi, got '" + s + "'");
    return {to_f64(p[0]), to_f64(p[1])};
}

Site parse_site(const std::string& s) {
    const auto p = split(s, ',');
    if (p.size() != 2) throw ConfigError("expected x,y, got '" + s + "'");
    return {to_i64(p[0]), to_i64(p[1])};
}

LatticeWindow parse_window(const std::string& s) {
    const auto parts = split(s, ',');
    auto range = [&](const std::string& r) {
        const auto p = split(r, ':');
        if (p.size() != 2) throw ConfigError("expected a:b in window '" + s + "'");
        return std::pair{to_i64(p[0]), to_i64(p[1])};
    };
    LatticeWindow w;
    if (parts.size() == 1) {
        const auto [a, b] = range(parts[0]);
        w = LatticeWindow::square(a, b);
    } else if (parts.size() == 2) {
        const auto [a, b] = range(parts[0]);
        const auto [c, d] = range(parts[1]);
        w = {a, b, c, d};
    } else {
        throw ConfigError("bad window '" + s + "'");
    }
    validate(w);
    return w;
}

std::map<std::string, std::string> parse_config_file(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

namespace {

using Weights = std::variant<Environment, WeightField>;

Weights load_weights(const RunConfig& c) {
    if (!c.field_path.empty()) return load_field(c.field_path);
    return Environment(c.seed);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file_atomic(path, text);
}

Json site_json(Site s) { return Json::array({s.x, s.y}); }

Json jump_json(const JumpRecord& j) {
    return {{"origin", site_json(j.origin)}, {"from", site_json(j.from)}, {"to", site_json(j.to)},
            {"alpha_star", j.alpha_star},    {"gap", j.gap},               {"horizon", j.horizon},
            {"k_minus", j.k_minus},          {"k_plus", j.k_plus}};
}

Sign parse_sign(const std::string& s) {
    if (s == "minus" || s == "-") return Sign::Minus;
    if (s == "plus" || s == "+") return Sign::Plus;
    if (s == "none") return Sign::None;
    throw ConfigError("sign must be minus, plus or none");
}

int cmd_simulate(const RunConfig& c) {
    if (c.out.empty()) throw ConfigError("simulate needs --out");
    const auto f = sample_weight_field(c.window, c.seed);
    save_field(f, c.out);
    if (!c.tsv.empty()) export_tsv(f, c.tsv);
    std::cerr << "wrote " << f.window().size() << " weights to " << c.out << "\n";
    return 0;
}

int cmd_busemann(const RunConfig& c) {
    const auto w = load_weights(c);
    return std::visit(
        [&](const auto& env) {
            BusemannField B;
            if (c.horizon <= 0) {
                if (c.sign != "none") throw ConfigError("stationary fields take no sign; give --horizon for one-sided fields");
                B = stationary_busemann_field(c.window, c.alpha, env, derive_seed(c.seed, "boundary"));
            } else {
                const DirectionSpec d[1] = {{Direction(c.alpha), parse_sign(c.sign)}};
                B = horizon_busemann_fields(c.window, d, c.horizon, env, c.window.lower())[0];
            }
            Json j = {{"window", to_string(c.window)},
                      {"alpha", B.direction.alpha()},
                      {"sign", to_string(B.sign)},
                      {"construction", B.mode == Construction::Horizon ? "horizon" : "stationary"},
                      {"horizon", B.horizon},
                      {"target", site_json(B.target)},
                      {"recovery_residual", recovery_residual(B, env)},
                      {"cocycle_residual", cocycle_residual(B)}};
            if (!c.tsv.empty()) {
                std::string s = "# x\ty\tU\tV\n";
                for (std::size_t i = 0; i < B.window.size(); ++i) {
                    const Site z = B.window.site_at(i);
                    s += std::to_string(z.x) + '\t' + std::to_string(z.y) + '\t' + format_double(B.U[i]) + '\t' +
                         format_double(B.V[i]) + '\n';
                }
                write_file_atomic(c.tsv, s);
            }
            emit(c.out, j.dump(2) + "\n");
            return 0;
        },
        w);
}

int cmd_graphs(const RunConfig& c) {
    const auto w = load_weights(c);
    return std::visit(
        [&](const auto& env) {
            if (!(c.alpha_lo <= c.alpha_hi)) throw ConfigError("interval needs lo <= hi");
            const bool point = c.alpha_lo == c.alpha_hi;
            const DirectionSpec d[2] = {{Direction(c.alpha_lo), point ? Sign::None : Sign::Minus},
                                        {Direction(c.alpha_hi), point ? Sign::None : Sign::Plus}};
            const auto B = horizon_busemann_fields(c.window, d, c.horizon, env, c.window.lower());
            const auto glo = geodesic_graph(B[0]);
            const auto ghi = geodesic_graph(B[1]);
            const auto ig = instability_graph(B[0], B[1]);
            const auto pts = classify_points(ig, B[0], B[1]);
            const auto flow = flow_check(B[0], B[1]);
            Json j = {{"window", to_string(c.window)},
                      {"interval", {c.alpha_lo, c.alpha_hi}},
                      {"horizon", c.horizon},
                      {"targets", {site_json(B[0].target), site_json(B[1].target)}},
                      {"instability_edges", ig.edge_count()},
                      {"instability_vertices", ig.vertex_count()},
                      {"branch_points", pts.branch.size()},
                      {"coalescence_points", pts.coalesce.size()},
                      {"degree_violations", degree_violations(ig)},
                      {"no_cross_violations", no_cross_violations(ig, glo, ghi)},
                      {"flow_out_residual", flow.max_out_residual},
                      {"flow_in_residual", flow.max_in_residual}};
            if (!c.edges_out.empty()) save_edge_list(ig.edges(), true, c.edges_out);
            if (!c.geodesics_out.empty()) {
                std::vector<EdgeRecord> e;
                for (std::size_t i = 0; i < glo.window.size(); ++i) {
                    const Site z = glo.window.site_at(i);
                    e.push_back({z, z + step_vector(glo.step[i]), 0.0, false});
                }
                save_edge_list(e, false, c.geodesics_out);
            }
            if (!c.svg_out.empty()) {
                RenderOptions o;
                o.cell = c.cell;
                o.lo_color = c.lo_color;
                o.hi_color = c.hi_color;
                o.instability_color = c.instability_color;
                o.instability_width = c.instability_width;
                write_file_atomic(c.svg_out, render_svg({&glo, &ghi, &ig, &pts}, o));
            }
            emit(c.out, j.dump(2) + "\n");
            return 0;
        },
        w);
}

int cmd_scan(const RunConfig& c) {
    const auto parts = split(c.edge, ':');
    if (parts.size() != 2) throw ConfigError("edge must be x,y:x,y");
    const Site from = parse_site(parts[0]), to = parse_site(parts[1]);
    const Site x{std::min(from.x, to.x), std::min(from.y, to.y)};
    const auto w = load_weights(c);
    return std::visit(
        [&](const auto& env) {
            const auto scan = scan_pair(x, from, to, env, c.alpha_lo, c.alpha_hi, c.horizon);
            Json arr = Json::array();
            for (const auto& r : scan.records) arr.push_back(jump_json(r));
            emit(c.out, arr.dump(2) + "\n");
            std::cerr << scan.records.size() << " jumps; covered alpha [" << scan.covered_lo << ", " << scan.covered_hi
                      << "]\n";
            return 0;
        },
        w);
}

int cmd_stats(const RunConfig& c) {
    if (c.test.empty()) throw ConfigError("stats needs --test (an acceptance test name or 'densities')");
    StatsReport r;
    if (c.test == "densities") {
        DensityConfig d;
        d.alpha_lo = c.alpha_lo;
        d.alpha_hi = c.alpha_hi;
        d.window_sizes = c.sizes;
        d.replicas = c.replicas;
        d.horizon = c.horizon;
        d.seed = c.seed;
        r = estimate_densities(d);
    } else {
        SuiteConfig s{c.suite, {c.test}, c.level};
        validate_suite_config(s);
        r = run_acceptance_test(c.test, s, c.seed).report;
    }
    emit(c.out, r.to_json().dump(2) + "\n");
    return 0;
}

int cmd_verify(const RunConfig& c) {
    SuiteConfig s{c.suite, c.tests, c.level};
    const auto res = acceptance_suite(s, c.seed, [&](const TestOutcome& o) {
        std::cerr << (o.report.passed() ? "PASS " : "FAIL ") << o.report.test_name;
        if (c.timings) std::cerr << " (" << o.runtime_s << " s)";
        std::cerr << "\n";
    });
    emit(c.out, res.summary(c.timings).dump(2) + "\n");
    return res.fail_count() == 0 ? 0 : 1;
}

void add_common(CLI::App* sub, RunConfig& c, std::string& window, bool seeds = true) {
    sub->add_option("--window", window, "lattice window a:b[,c:d]");
    sub->add_option("--out", c.out, "output file (default stdout)");
    if (seeds) {
        sub->add_option("--seed", c.seed, "environment seed");
        sub->add_option("--field", c.field_path, "read weights from a field file");
    }
}

}  // namespace

int run(const std::vector<std::string>& args_in) {
    std::vector<std::string> args = args_in;
    if (args.empty()) args.push_back("lppsim");

    RunConfig c;
    if (const char* t = std::getenv("LPP_THREADS")) {
        try {
            c.threads = static_cast<int>(to_i64(t));
        } catch (const ConfigError&) {
            std::cerr << "error: LPP_THREADS must be an integer\n";
            return 2;
        }
    }

    // Config values are spliced in before the user's flags, so flags win.
    try {
        for (std::size_t i = 1; i < args.size(); ++i) {
            std::string path;
            if (args[i] == "--config" && i + 1 < args.size())
                path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                path = args[i].substr(9);
            else
                continue;
            const auto kv = parse_config_file(read_file(path));
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i + (args[i] == "--config" ? 2 : 1)));
            std::vector<std::string> extra;
            std::string command;
            for (const auto& [k, v] : kv) {
                if (k == "command")
                    command = v;
                else
                    extra.push_back("--" + k + "=" + v);
            }
            // Subcommand: first positional on the command line, else the file's `command`.
            std::size_t pos = 1;
            const bool has_sub = args.size() > 1 && args[1].rfind("-", 0) != 0;
            if (has_sub)
                pos = 2;
            else if (!command.empty())
                args.insert(args.begin() + 1, command), pos = 2;
            args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), extra.begin(), extra.end());
            break;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Exponential last-passage percolation: Busemann fields, instability graphs, queue and walk laws",
                 "lppsim"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.add_option("--threads", c.threads, "worker threads (default: LPP_THREADS or all cores)");

    std::string window, interval, alpha_range, tests;

    auto* sim = app.add_subcommand("simulate", "sample an i.i.d. Exp(1) weight field and save it");
    add_common(sim, c, window, false);
    sim->add_option("--seed", c.seed, "environment seed");
    sim->add_option("--tsv", c.tsv, "also export x y weight text");

    auto* bus = app.add_subcommand("busemann", "Busemann increments on a window");
    add_common(bus, c, window);
    bus->add_option("--alpha", c.alpha, "direction parameter in (0,1)");
    bus->add_option("--sign", c.sign, "minus, plus or none");
    bus->add_option("--horizon", c.horizon, "target level; 0 = stationary boundary construction");
    bus->add_option("--tsv", c.tsv, "export x y U V");

    auto* gr = app.add_subcommand("graphs", "geodesic and instability graphs over a direction interval");
    add_common(gr, c, window);
    gr->add_option("--interval", interval, "zeta:eta as alpha values");
    gr->add_option("--horizon", c.horizon, "target level");
    gr->add_option("--edges", c.edges_out, "instability edge list (TSV)");
    gr->add_option("--geodesics", c.geodesics_out, "lower geodesic graph edge list (TSV)");
    gr->add_option("--svg", c.svg_out, "SVG rendering");
    gr->add_option("--cell", c.cell, "SVG pixels per lattice unit");
    gr->add_option("--lo-color", c.lo_color);
    gr->add_option("--hi-color", c.hi_color);
    gr->add_option("--instability-color", c.instability_color);
    gr->add_option("--instability-width", c.instability_width);

    auto* sj = app.add_subcommand("scan-jumps", "jump directions of B(from,to) along a horizon level");
    add_common(sj, c, window);
    sj->add_option("--edge", c.edge, "from:to as x,y:x,y");
    sj->add_option("--alpha", alpha_range, "lo:hi");
    sj->add_option("--horizon", c.horizon, "target level");

    auto* st = app.add_subcommand("stats", "one statistical check as a JSON report");
    st->add_option("--test", c.test, "acceptance test name or 'densities'");
    st->add_option("--suite", c.suite, "default or quick");
    st->add_option("--seed", c.seed, "master seed");
    st->add_option("--level", c.level, "significance level");
    st->add_option("--out", c.out, "output file (default stdout)");
    st->add_option("--interval", interval, "zeta:eta (densities)");
    st->add_option("--horizon", c.horizon, "target level (densities)");
    st->add_option("--sizes", c.sizes, "box sizes (densities)")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    st->add_option("--replicas", c.replicas, "replicas (densities)");

    auto* vf = app.add_subcommand("verify", "run the acceptance suite");
    vf->add_option("--suite", c.suite, "default or quick");
    vf->add_option("--seed", c.seed, "master seed");
    vf->add_option("--tests", tests, "comma-separated subset");
    vf->add_option("--level", c.level, "significance level");
    vf->add_option("--out", c.out, "summary JSON (default stdout)");
    vf->add_flag("--timings", c.timings, "include runtimes in the summary");

    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (c.threads > 0) set_thread_count(c.threads);
        if (!window.empty()) c.window = parse_window(window);
        if (!interval.empty()) std::tie(c.alpha_lo, c.alpha_hi) = parse_range(interval);
        if (!alpha_range.empty()) std::tie(c.alpha_lo, c.alpha_hi) = parse_range(alpha_range);
        if (!tests.empty()) c.tests = split(tests, ',');
        if (sim->parsed()) return cmd_simulate(c);
        if (bus->parsed()) return cmd_busemann(c);
        if (gr->parsed()) return cmd_graphs(c);
        if (sj->parsed()) return cmd_scan(c);
        if (st->parsed()) return cmd_stats(c);
        return cmd_verify(c);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace lpp
