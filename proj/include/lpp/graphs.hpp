#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lpp/busemann.hpp"
#include "lpp/io.hpp"
#include "lpp/lattice.hpp"

namespace lpp {

enum class Step : std::uint8_t { E1 = 1, E2 = 2 };

constexpr Site step_vector(Step s) { return s == Step::E1 ? e1 : e2; }

// One out-step per site of the window.
struct GeodesicGraph {
    Direction direction{0.5};
    Sign sign = Sign::None;
    LatticeWindow window;
    std::vector<Step> step;

    Step at(Site s) const { return step[window.index(s)]; }
};

// E1 if U < V, E2 if U > V; near-ties go to E1 for plus fields, E2 otherwise.
GeodesicGraph geodesic_graph(const BusemannField& B);

// Dual site s + (1/2,1/2) points to (s + (1/2,1/2)) - e_i, i = points[s].
// It points along e1 exactly when the primal site points along e1, so the
// dual edge never crosses a primal edge.
struct DualGraph {
    LatticeWindow window;
    std::vector<Step> points;

    Step at(Site s) const { return points[window.index(s)]; }
};

DualGraph dual_graph(const GeodesicGraph& g);

// Primal edge (x, x + step) crosses the dual edge from its dual neighbour;
// counts sites where a primal edge and a dual edge cross.
std::size_t duality_violations(const GeodesicGraph& g, const DualGraph& d);

enum class Face { None, North, East };
const char* to_string(Face f);

struct GeodesicPath {
    std::vector<Site> sites;
    Face exit = Face::None;  // face through which the path leaves the window
};

GeodesicPath follow_geodesic(Site x, const GeodesicGraph& g);

struct Coalescence {
    std::optional<Site> site;
    Face exit = Face::None;  // set when censored
    bool censored() const { return !site.has_value(); }
};

Coalescence coalescence_point(Site x, Site y, const GeodesicGraph& g);

// Throws DomainError("uncoupled fields") unless lo, hi share environment,
// window, origin and horizon with lo's target weakly left of hi's.
void require_coupled(const BusemannField& lo, const BusemannField& hi);

// B_hi(x,y) - B_lo(x,y).
double interval_mass(Site x, Site y, const BusemannField& lo, const BusemannField& hi);

// Dual site x* = x + (1/2,1/2) for x in the window.
// south(x) = |mu_{x,x+e1}| labels (x*, x*-e2); west(x) = |mu_{x,x+e2}| labels (x*, x*-e1).
struct InstabilityGraph {
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    LatticeWindow window;
    std::vector<double> south;
    std::vector<double> west;

    double south_mass(Site x) const { return south[window.index(x)]; }
    double west_mass(Site x) const { return west[window.index(x)]; }
    bool has_south(Site x) const { return south_mass(x) > kTieTol; }
    bool has_west(Site x) const { return west_mass(x) > kTieTol; }
    bool in_from_east(Site x) const { return window.contains(x + e1) && has_west(x + e1); }
    bool in_from_north(Site x) const { return window.contains(x + e2) && has_south(x + e2); }
    int out_degree(Site x) const { return int(has_south(x)) + int(has_west(x)); }
    int in_degree(Site x) const { return int(in_from_east(x)) + int(in_from_north(x)); }
    bool is_vertex(Site x) const { return out_degree(x) > 0 || in_degree(x) > 0; }
    // Dual sites on the window boundary, where some edge endpoints are unobserved.
    bool censored(Site x) const {
        return x.x == window.x_min || x.y == window.y_min || x.x == window.x_max || x.y == window.y_max;
    }

    std::size_t edge_count() const;
    std::size_t vertex_count() const;
    std::vector<Site> vertices() const;
    // Dual edges, endpoints given by lower-left primal site. Edges leaving the window are included.
    std::vector<EdgeRecord> edges() const;
};

InstabilityGraph instability_graph(const BusemannField& lo, const BusemannField& hi);

// Restriction to [x_min, x_min+n] x [y_min, y_min+n] counting edges per orientation.
struct EdgeCounts {
    std::size_t south = 0;
    std::size_t west = 0;
    std::size_t both = 0;  // dual sites with both out-edges
    std::size_t sites = 0;
};
EdgeCounts count_edges(const InstabilityGraph& g, const LatticeWindow& box);

// Interior vertices missing an in- or out-edge.
std::size_t degree_violations(const InstabilityGraph& g);

struct PointClasses {
    std::vector<Site> branch;
    std::vector<Site> coalesce;
    std::size_t sign_checked = 0;
    std::size_t sign_mismatches = 0;  // branch status disagreeing with B_lo(x+e1,x+e2) <= 0 <= B_hi(x+e1,x+e2)
};

PointClasses classify_points(const InstabilityGraph& g, const BusemannField& lo, const BusemannField& hi);

// All vertices with a directed path to x*. Throws if x* is not a vertex.
std::vector<Site> ancestors(const InstabilityGraph& g, Site x);

// Ancestors of x* lying outside the strip between the lo-geodesic from x+e2
// and the hi-geodesic from x+e1 (levels the paths reach inside the window).
std::size_t ancestor_strip_violations(const InstabilityGraph& g, Site x, const GeodesicGraph& lo,
                                      const GeodesicGraph& hi);

// Mass on a horizontal edge needs the lo step to be E2; on a vertical edge the hi step to be E1.
std::size_t no_cross_violations(const InstabilityGraph& g, const GeodesicGraph& lo, const GeodesicGraph& hi);

// Whether the lo-geodesic from x+e2 and the hi-geodesic from x+e1 stay disjoint
// inside the window; nullopt when both leave the window without meeting.
std::optional<bool> flanking_geodesics_disjoint(Site x, const GeodesicGraph& lo, const GeodesicGraph& hi);

struct FlowReport {
    std::size_t sites = 0;
    double max_out_residual = 0.0;    // | |mu_{x+e1,x+e2}| - south - west |
    double max_in_residual = 0.0;     // | |mu_{x+e1,x+e2}| - in-flow from east and north |
    double min_component = 0.0;       // smallest signed south / west mass (should be >= 0)
    double max_level_residual = 0.0;  // out-mass of one anti-diagonal vs in-mass one level down
};

FlowReport flow_check(const BusemannField& lo, const BusemannField& hi);

struct IslandForest {
    LatticeWindow window;
    std::vector<std::int32_t> component;  // per site
    std::vector<Site> terminal;           // per component
    std::vector<bool> terminal_interior;  // terminal's step pair is observed inside the window

    std::size_t count() const { return terminal.size(); }
    std::int32_t at(Site s) const { return component[window.index(s)]; }
};

// Components of the graph of primal edges used by both geodesic graphs.
IslandForest island_components(const GeodesicGraph& lo, const GeodesicGraph& hi);

// Adjacent sites in different components, both ending inside the window,
// whose shared edge carries no instability mass.
std::size_t island_boundary_violations(const IslandForest& f, const InstabilityGraph& g);

}  // namespace lpp
