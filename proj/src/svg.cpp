#include "lpp/svg.hpp"

#include <cstdio>
#include <sstream>

#include "lpp/error.hpp"

namespace lpp {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Frame {
    LatticeWindow w;
    const RenderOptions& o;
    // Lattice point to pixel; y grows downward in SVG.
    double px(double x) const { return o.margin + (x - static_cast<double>(w.x_min) + 0.5) * o.cell; }
    double py(double y) const { return o.margin + (static_cast<double>(w.y_max) - y + 0.5) * o.cell; }
};

void line(std::ostringstream& s, const Frame& f, const char* cls, double x1, double y1, double x2, double y2) {
    s << "<line class=\"" << cls << "\" x1=\"" << num(f.px(x1)) << "\" y1=\"" << num(f.py(y1)) << "\" x2=\""
      << num(f.px(x2)) << "\" y2=\"" << num(f.py(y2)) << "\"/>\n";
}

void geodesics(std::ostringstream& s, const Frame& f, const GeodesicGraph& g, const char* cls) {
    for (std::size_t i = 0; i < g.window.size(); ++i) {
        const Site z = g.window.site_at(i);
        const Site t = z + step_vector(g.step[i]);
        if (!g.window.contains(t)) continue;
        line(s, f, cls, double(z.x), double(z.y), double(t.x), double(t.y));
    }
}

}  // namespace

std::string render_svg(const SvgScene& scene, const RenderOptions& opt) {
    if (!scene.instability) throw DomainError("render_svg: instability graph required");
    const auto& ig = *scene.instability;
    if (!ig.window.valid() || ig.window.size() == 0) throw InvalidWindow("render_svg: empty window");
    for (const auto* g : {scene.lo, scene.hi})
        if (g && !(g->window == ig.window)) throw DomainError("render_svg: graphs over different windows");

    const Frame f{ig.window, opt};
    const double W = 2 * opt.margin + static_cast<double>(ig.window.width()) * opt.cell;
    const double H = 2 * opt.margin + static_cast<double>(ig.window.height()) * opt.cell;

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H)
      << "\" viewBox=\"0 0 " << num(W) << ' ' << num(H) << "\">\n";
    s << "<style>\n"
      << ".frame{fill:none;stroke:" << opt.frame_color << ";stroke-width:1}\n"
      << ".geo-lo{stroke:" << opt.lo_color << ";stroke-width:" << num(opt.geodesic_width) << "}\n"
      << ".geo-hi{stroke:" << opt.hi_color << ";stroke-width:" << num(opt.geodesic_width)
      << ";stroke-dasharray:2,2}\n"
      << ".inst{stroke:" << opt.instability_color << ";stroke-width:" << num(opt.instability_width)
      << ";stroke-linecap:round}\n"
      << ".branch{fill:" << opt.branch_color << "}\n"
      << ".coalesce{fill:" << opt.coalesce_color << "}\n"
      << "</style>\n";
    s << "<rect class=\"frame\" x=\"" << num(opt.margin) << "\" y=\"" << num(opt.margin) << "\" width=\""
      << num(W - 2 * opt.margin) << "\" height=\"" << num(H - 2 * opt.margin) << "\"/>\n";

    if (scene.hi) {
        s << "<g id=\"geodesics-hi\">\n";
        geodesics(s, f, *scene.hi, "geo-hi");
        s << "</g>\n";
    }
    if (scene.lo) {
        s << "<g id=\"geodesics-lo\">\n";
        geodesics(s, f, *scene.lo, "geo-lo");
        s << "</g>\n";
    }

    s << "<g id=\"instability\">\n";
    for (std::size_t i = 0; i < ig.window.size(); ++i) {
        const Site z = ig.window.site_at(i);
        const double cx = double(z.x) + 0.5, cy = double(z.y) + 0.5;
        if (ig.has_south(z)) line(s, f, "inst", cx, cy, cx, cy - 1.0);
        if (ig.has_west(z)) line(s, f, "inst", cx, cy, cx - 1.0, cy);
    }
    s << "</g>\n";

    if (scene.points) {
        s << "<g id=\"points\">\n";
        const double r = opt.marker_radius;
        for (const Site& z : scene.points->branch)
            s << "<circle class=\"branch\" cx=\"" << num(f.px(double(z.x) + 0.5)) << "\" cy=\""
              << num(f.py(double(z.y) + 0.5)) << "\" r=\"" << num(r) << "\"/>\n";
        for (const Site& z : scene.points->coalesce)
            s << "<rect class=\"coalesce\" x=\"" << num(f.px(double(z.x) + 0.5) - r) << "\" y=\""
              << num(f.py(double(z.y) + 0.5) - r) << "\" width=\"" << num(2 * r) << "\" height=\"" << num(2 * r)
              << "\"/>\n";
        s << "</g>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace lpp
