#include "lpp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "lpp/error.hpp"

namespace lpp {

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot rename temp file onto " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string coord(std::int64_t c, bool dual) {
    if (!dual) return std::to_string(c);
    if (c < 0) return "-" + std::to_string(-c - 1) + ".5";
    return std::to_string(c) + ".5";
}

// Parses an integer or an integer plus one half; returns floor.
bool parse_coord(std::string_view tok, bool& half, std::int64_t& out) {
    half = false;
    auto dot = tok.find('.');
    std::string_view ip = tok.substr(0, dot);
    if (dot != std::string_view::npos) {
        if (tok.substr(dot) != ".5") return false;
        half = true;
    }
    bool neg = !ip.empty() && ip[0] == '-';
    std::string_view digits = neg ? ip.substr(1) : ip;
    std::int64_t mag = 0;
    if (digits.empty()) {
        if (!half) return false;
    } else {
        auto r = std::from_chars(digits.data(), digits.data() + digits.size(), mag);
        if (r.ec != std::errc() || r.ptr != digits.data() + digits.size()) return false;
    }
    if (!half) {
        out = neg ? -mag : mag;
    } else {
        // value = ±(mag + 1/2); floor of that
        out = neg ? -mag - 1 : mag;
    }
    return true;
}

}  // namespace

std::string encode_edge_list(const std::vector<EdgeRecord>& edges, bool dual) {
    std::string s = dual ? "# lattice=dual\n" : "# lattice=primal\n";
    s += "from_x\tfrom_y\tto_x\tto_y\tmass\n";
    for (const auto& e : edges) {
        s += coord(e.from.x, dual) + '\t' + coord(e.from.y, dual) + '\t' + coord(e.to.x, dual) + '\t' +
             coord(e.to.y, dual);
        s += '\t';
        if (e.has_mass) s += format_double(e.mass);
        s += '\n';
    }
    return s;
}

std::vector<EdgeRecord> decode_edge_list(std::string_view text, bool* dual_out) {
    std::vector<EdgeRecord> edges;
    bool dual = false;
    std::size_t pos = 0;
    std::uint64_t line_no = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        std::uint64_t line_off = pos;
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line == "# lattice=dual") dual = true;
            continue;
        }
        if (line.rfind("from_x", 0) == 0) continue;
        std::vector<std::string_view> tok;
        std::size_t p = 0;
        while (true) {
            auto t = line.find('\t', p);
            tok.push_back(line.substr(p, t == std::string_view::npos ? std::string_view::npos : t - p));
            if (t == std::string_view::npos) break;
            p = t + 1;
        }
        if (tok.size() < 4 || tok.size() > 5) throw FormatError("edge list: expected 4 or 5 columns", line_off);
        EdgeRecord e;
        std::int64_t v[4];
        for (int i = 0; i < 4; ++i) {
            bool half = false;
            if (!parse_coord(tok[static_cast<std::size_t>(i)], half, v[i]) || half != dual)
                throw FormatError("edge list: bad coordinate", line_off);
        }
        e.from = {v[0], v[1]};
        e.to = {v[2], v[3]};
        if (tok.size() == 5 && !tok[4].empty()) {
            auto r = std::from_chars(tok[4].data(), tok[4].data() + tok[4].size(), e.mass);
            if (r.ec != std::errc() || r.ptr != tok[4].data() + tok[4].size())
                throw FormatError("edge list: bad mass", line_off);
            e.has_mass = true;
        }
        edges.push_back(e);
    }
    if (dual_out) *dual_out = dual;
    return edges;
}

void save_edge_list(const std::vector<EdgeRecord>& edges, bool dual, const std::filesystem::path& path) {
    write_file_atomic(path, encode_edge_list(edges, dual));
}

std::vector<EdgeRecord> load_edge_list(const std::filesystem::path& path, bool* dual) {
    return decode_edge_list(read_file(path), dual);
}

}  // namespace lpp
