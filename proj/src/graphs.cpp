#include "lpp/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "lpp/error.hpp"

namespace lpp {

GeodesicGraph geodesic_graph(const BusemannField& B) {
    GeodesicGraph g;
    g.direction = B.direction;
    g.sign = B.sign;
    g.window = B.window;
    g.step.resize(B.window.size());
    const Step tie = B.sign == Sign::Plus ? Step::E1 : Step::E2;
    for (std::size_t i = 0; i < g.step.size(); ++i) {
        const double d = B.U[i] - B.V[i];
        g.step[i] = std::abs(d) <= kTieTol ? tie : (d < 0.0 ? Step::E1 : Step::E2);
    }
    return g;
}

DualGraph dual_graph(const GeodesicGraph& g) { return DualGraph{g.window, g.step}; }

std::size_t duality_violations(const GeodesicGraph& g, const DualGraph& d) {
    // Primal edge x -> x+e2 is crossed by the dual edge x* -> x*-e1;
    // primal edge x -> x+e1 is crossed by the dual edge x* -> x*-e2.
    std::size_t bad = 0;
    for (std::size_t i = 0; i < g.step.size(); ++i) {
        const Site x = g.window.site_at(i);
        const bool primal_e2 = g.step[i] == Step::E2;
        const bool dual_west = d.at(x) == Step::E1;
        const bool primal_e1 = g.step[i] == Step::E1;
        const bool dual_south = d.at(x) == Step::E2;
        if (primal_e2 == dual_west || primal_e1 == dual_south) ++bad;
    }
    return bad;
}

const char* to_string(Face f) {
    switch (f) {
        case Face::None: return "none";
        case Face::North: return "north";
        case Face::East: return "east";
    }
    return "?";
}

GeodesicPath follow_geodesic(Site x, const GeodesicGraph& g) {
    if (!g.window.contains(x)) throw DomainError("follow_geodesic: start outside window");
    GeodesicPath p;
    Site z = x;
    while (true) {
        p.sites.push_back(z);
        const Site nz = z + step_vector(g.at(z));
        if (!g.window.contains(nz)) {
            p.exit = nz.x > g.window.x_max ? Face::East : Face::North;
            return p;
        }
        z = nz;
    }
}

Coalescence coalescence_point(Site x, Site y, const GeodesicGraph& g) {
    if (!g.window.contains(x) || !g.window.contains(y)) throw DomainError("coalescence_point: site outside window");
    auto advance = [&](Site& z, Face& exit) {
        const Site nz = z + step_vector(g.at(z));
        if (!g.window.contains(nz)) {
            exit = nz.x > g.window.x_max ? Face::East : Face::North;
            return false;
        }
        z = nz;
        return true;
    };
    Site a = x, b = y;
    Face exit = Face::None;
    while (a != b) {
        bool ok;
        if (a.level() < b.level())
            ok = advance(a, exit);
        else if (b.level() < a.level())
            ok = advance(b, exit);
        else
            ok = advance(a, exit) && advance(b, exit);
        if (!ok) return {std::nullopt, exit};
    }
    return {a, Face::None};
}

void require_coupled(const BusemannField& lo, const BusemannField& hi) {
    const bool ok = lo.mode == Construction::Horizon && hi.mode == Construction::Horizon &&
                    lo.environment_id == hi.environment_id && lo.window == hi.window && lo.origin == hi.origin &&
                    lo.horizon == hi.horizon && lo.target.x <= hi.target.x;
    if (!ok) throw DomainError("uncoupled fields: need horizon fields on one environment, window and level, lo left of hi");
}

double interval_mass(Site x, Site y, const BusemannField& lo, const BusemannField& hi) {
    require_coupled(lo, hi);
    return busemann_value(hi, x, y) - busemann_value(lo, x, y);
}

InstabilityGraph instability_graph(const BusemannField& lo, const BusemannField& hi) {
    require_coupled(lo, hi);
    InstabilityGraph g;
    g.alpha_lo = lo.direction.alpha();
    g.alpha_hi = hi.direction.alpha();
    g.window = lo.window;
    g.south.resize(g.window.size());
    g.west.resize(g.window.size());
    for (std::size_t i = 0; i < g.window.size(); ++i) {
        g.south[i] = lo.U[i] - hi.U[i];
        g.west[i] = hi.V[i] - lo.V[i];
    }
    return g;
}

std::size_t InstabilityGraph::edge_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < south.size(); ++i) n += (south[i] > kTieTol) + (west[i] > kTieTol);
    return n;
}

std::vector<Site> InstabilityGraph::vertices() const {
    std::vector<Site> v;
    for (std::size_t i = 0; i < south.size(); ++i) {
        const Site x = window.site_at(i);
        if (is_vertex(x)) v.push_back(x);
    }
    return v;
}

std::size_t InstabilityGraph::vertex_count() const { return vertices().size(); }

std::vector<EdgeRecord> InstabilityGraph::edges() const {
    std::vector<EdgeRecord> out;
    for (std::size_t i = 0; i < south.size(); ++i) {
        const Site x = window.site_at(i);
        if (south[i] > kTieTol) out.push_back({x, x - e2, south[i], true});
        if (west[i] > kTieTol) out.push_back({x, x - e1, west[i], true});
    }
    return out;
}

EdgeCounts count_edges(const InstabilityGraph& g, const LatticeWindow& box) {
    if (!g.window.contains(box)) throw DomainError("count_edges: box exceeds graph window");
    EdgeCounts c;
    for (std::int64_t y = box.y_min; y <= box.y_max; ++y)
        for (std::int64_t x = box.x_min; x <= box.x_max; ++x) {
            const Site s{x, y};
            const bool a = g.has_south(s), b = g.has_west(s);
            c.south += a;
            c.west += b;
            c.both += a && b;
            ++c.sites;
        }
    return c;
}

std::size_t degree_violations(const InstabilityGraph& g) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < g.south.size(); ++i) {
        const Site x = g.window.site_at(i);
        if (g.censored(x) || !g.is_vertex(x)) continue;
        if (g.out_degree(x) == 0 || g.in_degree(x) == 0) ++bad;
    }
    return bad;
}

PointClasses classify_points(const InstabilityGraph& g, const BusemannField& lo, const BusemannField& hi) {
    require_coupled(lo, hi);
    PointClasses pc;
    for (std::size_t i = 0; i < g.south.size(); ++i) {
        const Site x = g.window.site_at(i);
        if (!g.is_vertex(x)) continue;
        const bool branch = g.out_degree(x) == 2;
        if (branch) pc.branch.push_back(x);
        if (g.in_degree(x) == 2) pc.coalesce.push_back(x);
        const double b_lo = lo.V[i] - lo.U[i];
        const double b_hi = hi.V[i] - hi.U[i];
        const bool sign = b_lo <= kTieTol && b_hi >= -kTieTol;
        const bool strict = b_lo < -kTieTol && b_hi > kTieTol;
        ++pc.sign_checked;
        if (branch ? !sign : strict) ++pc.sign_mismatches;
    }
    return pc;
}

std::vector<Site> ancestors(const InstabilityGraph& g, Site x) {
    if (!g.window.contains(x) || !g.is_vertex(x)) throw DomainError("ancestors: " + to_string(x) + " is not a vertex");
    std::vector<std::uint8_t> seen(g.window.size(), 0);
    std::deque<Site> q{x};
    seen[g.window.index(x)] = 1;
    std::vector<Site> out;
    while (!q.empty()) {
        const Site z = q.front();
        q.pop_front();
        auto visit = [&](Site p) {
            auto& s = seen[g.window.index(p)];
            if (!s) {
                s = 1;
                out.push_back(p);
                q.push_back(p);
            }
        };
        if (g.in_from_east(z)) visit(z + e1);
        if (g.in_from_north(z)) visit(z + e2);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t ancestor_strip_violations(const InstabilityGraph& g, Site x, const GeodesicGraph& lo,
                                      const GeodesicGraph& hi) {
    const auto anc = ancestors(g, x);
    if (!g.window.contains(x + e1) || !g.window.contains(x + e2)) return 0;
    const auto left = follow_geodesic(x + e2, lo);
    const auto right = follow_geodesic(x + e1, hi);
    auto x_at_level = [](const GeodesicPath& p, std::int64_t level) -> std::optional<std::int64_t> {
        const std::int64_t l0 = p.sites.front().level();
        const std::int64_t i = level - l0;
        if (i < 0 || i >= static_cast<std::int64_t>(p.sites.size())) return std::nullopt;
        return p.sites[static_cast<std::size_t>(i)].x;
    };
    std::size_t bad = 0;
    for (Site a : anc) {
        // a* sits between the primal sites a+e2 (left) and a+e1 (right) on level a.level()+1.
        const std::int64_t lvl = a.level() + 1;
        const auto l = x_at_level(left, lvl);
        const auto r = x_at_level(right, lvl);
        if (l && *l > a.x) ++bad;
        if (r && *r < a.x + 1) ++bad;
    }
    return bad;
}

std::size_t no_cross_violations(const InstabilityGraph& g, const GeodesicGraph& lo, const GeodesicGraph& hi) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < g.south.size(); ++i) {
        if (g.south[i] > kTieTol && lo.step[i] != Step::E2) ++bad;
        if (g.west[i] > kTieTol && hi.step[i] != Step::E1) ++bad;
    }
    return bad;
}

std::optional<bool> flanking_geodesics_disjoint(Site x, const GeodesicGraph& lo, const GeodesicGraph& hi) {
    if (!lo.window.contains(x + e1) || !lo.window.contains(x + e2)) return std::nullopt;
    const auto a = follow_geodesic(x + e2, lo);
    const auto b = follow_geodesic(x + e1, hi);
    // Both start on the same level, so compare step by step.
    const std::size_t m = std::min(a.sites.size(), b.sites.size());
    for (std::size_t i = 0; i < m; ++i)
        if (a.sites[i] == b.sites[i]) return false;
    return std::nullopt;
}

FlowReport flow_check(const BusemannField& lo, const BusemannField& hi) {
    const auto g = instability_graph(lo, hi);
    const auto& w = g.window;
    FlowReport r;
    r.min_component = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) r.min_component = std::min({r.min_component, g.south[i], g.west[i]});
    for (std::int64_t y = w.y_min; y < w.y_max; ++y)
        for (std::int64_t x = w.x_min; x < w.x_max; ++x) {
            const Site s{x, y};
            const auto i = w.index(s);
            const double diag = std::abs((hi.V[i] - hi.U[i]) - (lo.V[i] - lo.U[i]));
            const double out = g.south[i] + g.west[i];
            const double in = g.west_mass(s + e1) + g.south_mass(s + e2);
            r.max_out_residual = std::max(r.max_out_residual, std::abs(diag - out));
            r.max_in_residual = std::max(r.max_in_residual, std::abs(diag - in));
            ++r.sites;
        }
    // Level telescoping: every in-window edge leaves level L and lands on level L-1.
    const std::int64_t lmin = w.x_min + w.y_min, lmax = w.x_max + w.y_max;
    for (std::int64_t L = lmin + 1; L <= lmax; ++L) {
        double out = 0.0, in = 0.0;
        for (std::int64_t x = std::max(w.x_min, L - w.y_max); x <= std::min(w.x_max, L - w.y_min); ++x) {
            const Site s{x, L - x};
            if (w.contains(s - e2)) out += g.south_mass(s);
            if (w.contains(s - e1)) out += g.west_mass(s);
        }
        const std::int64_t L1 = L - 1;
        for (std::int64_t x = std::max(w.x_min, L1 - w.y_max); x <= std::min(w.x_max, L1 - w.y_min); ++x) {
            const Site s{x, L1 - x};
            if (w.contains(s + e1)) in += g.west_mass(s + e1);
            if (w.contains(s + e2)) in += g.south_mass(s + e2);
        }
        r.max_level_residual = std::max(r.max_level_residual, std::abs(out - in));
    }
    return r;
}

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::int32_t find(std::int32_t a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            auto& p = parent[static_cast<std::size_t>(a)];
            p = parent[static_cast<std::size_t>(p)];
            a = p;
        }
        return a;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

IslandForest island_components(const GeodesicGraph& lo, const GeodesicGraph& hi) {
    if (!(lo.window == hi.window)) throw DomainError("island_components: graphs on different windows");
    const auto& w = lo.window;
    UnionFind uf(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (lo.step[i] != hi.step[i]) continue;
        const Site nz = w.site_at(i) + step_vector(lo.step[i]);
        if (w.contains(nz)) uf.unite(static_cast<std::int32_t>(i), static_cast<std::int32_t>(w.index(nz)));
    }
    IslandForest f;
    f.window = w;
    f.component.assign(w.size(), -1);
    std::vector<std::int32_t> label(w.size(), -1);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto r = static_cast<std::size_t>(uf.find(static_cast<std::int32_t>(i)));
        if (label[r] < 0) {
            label[r] = static_cast<std::int32_t>(f.terminal.size());
            f.terminal.push_back({});
            f.terminal_interior.push_back(false);
        }
        f.component[i] = label[r];
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Site s = w.site_at(i);
        const bool agree = lo.step[i] == hi.step[i];
        const bool inside = w.contains(s + step_vector(lo.step[i]));
        if (agree && inside) continue;
        const auto c = static_cast<std::size_t>(f.component[i]);
        f.terminal[c] = s;
        f.terminal_interior[c] = !agree && w.contains(s + e1) && w.contains(s + e2);
    }
    return f;
}

std::size_t island_boundary_violations(const IslandForest& f, const InstabilityGraph& g) {
    if (!(f.window == g.window)) throw DomainError("island_boundary_violations: window mismatch");
    const auto& w = f.window;
    // Components whose tree leaves the window may join outside it.
    auto split = [&](Site a, Site b) {
        const auto ca = f.at(a), cb = f.at(b);
        return ca != cb && f.terminal_interior[static_cast<std::size_t>(ca)] &&
               f.terminal_interior[static_cast<std::size_t>(cb)];
    };
    std::size_t bad = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Site s = w.site_at(i);
        if (w.contains(s + e1) && split(s, s + e1) && !g.has_south(s)) ++bad;
        if (w.contains(s + e2) && split(s, s + e2) && !g.has_west(s)) ++bad;
    }
    return bad;
}

}  // namespace lpp
