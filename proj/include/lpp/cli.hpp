#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lpp/lattice.hpp"

namespace lpp {

enum class Command { Simulate, Busemann, Graphs, ScanJumps, Stats, Verify };

const char* to_string(Command c);

// Everything a subcommand reads. Defaults are listed in the README.
struct RunConfig {
    Command command = Command::Verify;
    LatticeWindow window = LatticeWindow::square(0, 63);
    std::int64_t horizon = 4096;
    double alpha = 0.5;
    std::string sign = "none";
    double alpha_lo = 0.3;  // ranges: "--alpha lo:hi" for scan-jumps, "--interval" for graphs/stats
    double alpha_hi = 0.7;
    std::string edge = "0,0:1,0";
    std::uint64_t seed = 7;
    std::string field_path;  // read weights from a field file instead of the seed
    std::string out;         // empty: stdout
    std::string tsv;
    std::string edges_out;
    std::string geodesics_out;
    std::string svg_out;
    std::string suite = "default";
    std::vector<std::string> tests;
    std::string test;
    double level = 0.05;
    bool timings = false;
    int threads = 0;  // 0: LPP_THREADS or the OpenMP default
    std::vector<std::int64_t> sizes{50, 100};
    std::size_t replicas = 8;
    double cell = 12.0;
    std::string lo_color = "#1f5fbf";
    std::string hi_color = "#9a9a9a";
    std::string instability_color = "#d62020";
    double instability_width = 2.0;
};

// "a:b,c:d" (x range, y range) or "a:b" for a square.
LatticeWindow parse_window(const std::string& s);
// "x,y"
Site parse_site(const std::string& s);
// "lo:hi"
std::pair<double, double> parse_range(const std::string& s);

// key=value lines; '#' starts a comment. Throws ConfigError on malformed lines.
std::map<std::string, std::string> parse_config_file(const std::string& text);

// Exit codes: 0 success, 1 verify reported a FAIL, 2 usage or configuration error.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace lpp
