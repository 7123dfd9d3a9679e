#include "lpp/passage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpp/error.hpp"

namespace lpp {

Direction::Direction(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("direction parameter alpha must lie in (0,1)");
}

Direction Direction::from_xi1(double xi1) { return Direction(alpha_of_direction(xi1, 1.0 - xi1)); }

double Direction::xi1() const { return direction_of_alpha(alpha_)[0]; }

double alpha_of_direction(double xi1, double xi2) {
    if (!(xi1 > 0.0 && xi2 > 0.0) || std::abs(xi1 + xi2 - 1.0) > 1e-12)
        throw DomainError("direction must lie in the open segment between e1 and e2");
    const double a = std::sqrt(xi1);
    const double b = std::sqrt(xi2);
    return a / (a + b);
}

std::array<double, 2> direction_of_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    const double a2 = alpha * alpha;
    const double b2 = (1.0 - alpha) * (1.0 - alpha);
    const double s = a2 + b2;
    return {a2 / s, b2 / s};
}

double shape_function(double xi1, double xi2) {
    if (xi1 < 0.0 || xi2 < 0.0) throw DomainError("shape function needs nonnegative coordinates");
    const double r = std::sqrt(xi1) + std::sqrt(xi2);
    return r * r;
}

double PassageTimes::at(Site s) const {
    if (!window.contains(s)) throw DomainError("site " + to_string(s) + " outside passage-time window");
    return values[window.index(s)];
}

template <WeightSource W>
PassageTimes passage_times(Site anchor, Orientation o, const W& w, const LatticeWindow& window, Exec exec) {
    validate(window);
    if (!window.contains(anchor)) throw DomainError("anchor " + to_string(anchor) + " outside window");
    PassageTimes p;
    p.anchor = anchor;
    p.orientation = o;
    if (o == Orientation::FromAnchor) {
        p.window = LatticeWindow::spanning(anchor, window.upper());
        p.values = forward_passage(w, anchor, window.upper(), exec);
    } else {
        p.window = LatticeWindow::spanning(window.lower(), anchor);
        p.values = backward_passage(w, window.lower(), anchor, exec);
    }
    return p;
}

template <WeightSource W>
double bellman_residual(const PassageTimes& G, const W& w) {
    double worst = 0.0;
    const auto& win = G.window;
    for (std::size_t i = 0; i < win.size(); ++i) {
        const Site s = win.site_at(i);
        if (s == G.anchor) {
            worst = std::max(worst, std::abs(G.values[i]));
            continue;
        }
        double rhs = -std::numeric_limits<double>::infinity();
        if (G.orientation == Orientation::FromAnchor) {
            for (Site p : {s - e1, s - e2})
                if (win.contains(p)) rhs = std::max(rhs, G[p] + w.weight(p));
        } else {
            double best = -std::numeric_limits<double>::infinity();
            for (Site q : {s + e1, s + e2})
                if (win.contains(q)) best = std::max(best, G[q]);
            rhs = w.weight(s) + best;
        }
        worst = std::max(worst, std::abs(G.values[i] - rhs));
    }
    return worst;
}

template <WeightSource W>
std::vector<Site> finite_geodesic(Site x, Site y, const W& w) {
    if (!dominated(x, y)) throw DomainError("finite_geodesic: endpoints must satisfy x <= y");
    const auto G = forward_passage(w, x, y, Exec::Serial);
    const auto win = LatticeWindow::spanning(x, y);
    std::vector<Site> path{y};
    Site z = y;
    while (z != x) {
        const bool has1 = z.x > x.x, has2 = z.y > x.y;
        Site next;
        if (has1 && has2) {
            const Site p1 = z - e1, p2 = z - e2;
            const double h1 = G[win.index(p1)] + w.weight(p1);
            const double h2 = G[win.index(p2)] + w.weight(p2);
            next = (h1 > h2 + kTieTol) ? p1 : p2;
        } else {
            next = has1 ? z - e1 : z - e2;
        }
        z = next;
        path.push_back(z);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

template <WeightSource W>
double path_weight(const std::vector<Site>& path, const W& w) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) s += w.weight(path[i]);
    return s;
}

#define LPP_INSTANTIATE(W)                                                                                 \
    template PassageTimes passage_times<W>(Site, Orientation, const W&, const LatticeWindow&, Exec);      \
    template double bellman_residual<W>(const PassageTimes&, const W&);                                   \
    template std::vector<Site> finite_geodesic<W>(Site, Site, const W&);                                  \
    template double path_weight<W>(const std::vector<Site>&, const W&);

LPP_INSTANTIATE(Environment)
LPP_INSTANTIATE(WeightField)

}  // namespace lpp
