#pragma once

#include <string>

#include "lpp/graphs.hpp"

namespace lpp {

struct RenderOptions {
    double cell = 12.0;    // pixels per lattice unit
    double margin = 10.0;
    std::string frame_color = "#444444";
    std::string lo_color = "#1f5fbf";
    std::string hi_color = "#9a9a9a";
    std::string instability_color = "#d62020";
    std::string branch_color = "#d62020";
    std::string coalesce_color = "#1a1a1a";
    double geodesic_width = 1.0;
    double instability_width = 2.0;
    double marker_radius = 2.5;
};

struct SvgScene {
    const GeodesicGraph* lo = nullptr;  // optional
    const GeodesicGraph* hi = nullptr;  // optional
    const InstabilityGraph* instability = nullptr;
    const PointClasses* points = nullptr;  // optional markers
};

// Instability edges on the dual lattice (class "inst"), geodesic graph edges
// (classes "geo-lo" / "geo-hi"), branch and coalescence markers. Throws
// InvalidWindow for an empty window and DomainError if the graphs live on
// different windows.
std::string render_svg(const SvgScene& scene, const RenderOptions& opt = {});

}  // namespace lpp
