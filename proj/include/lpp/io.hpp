#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lpp/lattice.hpp"

namespace lpp {

// Writes to a sibling temp file, then renames over the destination.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

// Round-trip formatting for doubles in text exports.
std::string format_double(double v);

struct EdgeRecord {
    Site from;
    Site to;
    double mass = 0.0;
    bool has_mass = false;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// TSV: from_x from_y to_x to_y [mass]. For dual edges a stored site s stands
// for the dual point s + (1/2,1/2) and is written with the half offset.
std::string encode_edge_list(const std::vector<EdgeRecord>& edges, bool dual);
std::vector<EdgeRecord> decode_edge_list(std::string_view text, bool* dual = nullptr);

void save_edge_list(const std::vector<EdgeRecord>& edges, bool dual, const std::filesystem::path& path);
std::vector<EdgeRecord> load_edge_list(const std::filesystem::path& path, bool* dual = nullptr);

}  // namespace lpp
