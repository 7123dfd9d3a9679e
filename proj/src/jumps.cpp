#include <algorithm>
#include <cmath>
#include <limits>

#include "lpp/busemann.hpp"
#include "lpp/error.hpp"

namespace lpp {

std::vector<double> alpha_grid(double lo, double hi, double step) {
    if (!(lo > 0.0 && hi < 1.0 && lo < hi && step > 0.0)) throw DomainError("alpha grid needs 0 < lo < hi < 1, step > 0");
    std::vector<double> g;
    const auto m = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::int64_t i = 0; i <= m; ++i) g.push_back(lo + static_cast<double>(i) * step);
    if (g.back() < hi - 1e-12) g.push_back(hi);
    return g;
}

template <WeightSource W>
CompetitionInterface competition_interface(Site x, const W& w, std::int64_t n) {
    if (n < 1) throw DomainError("competition_interface: horizon exhausted (need n >= 1)");
    const Site corner = x + Site{n, n};
    const auto win = LatticeWindow::spanning(x, corner);
    const auto G = forward_passage(w, x, corner, Exec::Serial);
    CompetitionInterface ci{x, {x}};
    Site z = x;
    for (std::int64_t t = 0; t < n; ++t) {
        const Site a = z + e1, b = z + e2;
        const double h1 = G[win.index(a)] + w.weight(a);
        const double h2 = G[win.index(b)] + w.weight(b);
        const bool upper_tree = !(h1 > h2 + kTieTol);  // parent of z+ê is z+e2
        z = z + (upper_tree ? e1 : e2);
        ci.dual_path.push_back(z);
    }
    return ci;
}

template <WeightSource W>
CifEstimate cif_direction(Site x, const W& w, std::span<const double> grid, std::int64_t n, Exec exec) {
    if (grid.size() < 2) throw DomainError("cif_direction: grid needs at least two points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("cif_direction: grid must be strictly increasing");
    const LatticeWindow win{x.x, x.x, x.y, x.y};
    // Targets on the axes are reachable from only one of x+e1, x+e2, which
    // makes B(x+e1, x+e2) = -inf at k = 0 and +inf at k = n.
    auto b12 = [&](std::size_t j) {
        const Direction d(grid[j]);
        const std::int64_t k = target_index(d, Sign::None, n);
        if (k <= 0) return -std::numeric_limits<double>::infinity();
        if (k >= n) return std::numeric_limits<double>::infinity();
        const auto B = field_to_target(win, x + Site{k, n - k}, w, x, exec);
        return B.v(x) - B.u(x);
    };
    std::size_t lo = 0, hi = grid.size() - 1;
    if (b12(lo) > 0.0 || b12(hi) <= 0.0) throw DomainError("cif_direction: no sign change inside the grid range");
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (b12(mid) > 0.0 ? hi : lo) = mid;
    }
    CifEstimate est;
    est.direction = Direction(0.5 * (grid[lo] + grid[hi]));
    est.alpha_lo = grid[lo];
    est.alpha_hi = grid[hi];
    est.grid_index = hi;
    return est;
}

template <WeightSource W>
JumpScan scan_pair(Site x, Site from, Site to, const W& w, double alpha_lo, double alpha_hi, std::int64_t n,
                   Exec exec) {
    if (!(alpha_lo > 0.0 && alpha_hi < 1.0 && alpha_lo < alpha_hi)) throw DomainError("jump scan: empty alpha range");
    const double nd = static_cast<double>(n);
    JumpScan scan;
    scan.alpha_lo = alpha_lo;
    scan.alpha_hi = alpha_hi;
    scan.k_lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(nd * direction_of_alpha(alpha_lo)[0])));
    scan.k_hi = std::min<std::int64_t>(n - 1, static_cast<std::int64_t>(std::ceil(nd * direction_of_alpha(alpha_hi)[0])));
    if (scan.k_lo >= scan.k_hi) throw DomainError("jump scan: horizon too small to resolve the alpha range");
    auto alpha_at = [&](double k) { return alpha_of_direction(k / nd, 1.0 - k / nd); };
    scan.covered_lo = alpha_at(static_cast<double>(scan.k_lo));
    scan.covered_hi = alpha_at(static_cast<double>(scan.k_hi));
    const auto prof = level_profile(w, x, from, to, n, scan.k_lo, scan.k_hi, exec);
    for (std::int64_t k = scan.k_lo; k < scan.k_hi; ++k) {
        const auto i = static_cast<std::size_t>(k - scan.k_lo);
        const double d0 = prof.from_a[i] - prof.from_b[i];
        const double d1 = prof.from_a[i + 1] - prof.from_b[i + 1];
        const double delta = d1 - d0;
        if (std::abs(delta) <= kTieTol) continue;
        const double a = alpha_at(static_cast<double>(k) + 0.5);
        if (!(a > alpha_lo && a < alpha_hi)) continue;
        scan.records.push_back({x, from, to, a, std::abs(delta), n, k, k + 1});
    }
    for (std::size_t i = 1; i < scan.records.size(); ++i) {
        const double s = scan.records[i].alpha_star - scan.records[i - 1].alpha_star;
        scan.min_spacing = (i == 1) ? s : std::min(scan.min_spacing, s);
    }
    return scan;
}

template <WeightSource W>
JumpScan find_jump_directions(Site x, int axis, const W& w, double alpha_lo, double alpha_hi, std::int64_t n,
                              Exec exec) {
    if (axis != 1 && axis != 2) throw DomainError("edge axis must be 1 or 2");
    return scan_pair(x, x, x + unit(axis), w, alpha_lo, alpha_hi, n, exec);
}

template <WeightSource W>
std::optional<JumpRecord> cif_jump(Site x, const W& w, double alpha_lo, double alpha_hi, std::int64_t n, Exec exec) {
    if (!(alpha_lo > 0.0 && alpha_hi < 1.0 && alpha_lo < alpha_hi)) throw DomainError("cif scan: empty alpha range");
    const double nd = static_cast<double>(n);
    // The axis targets k = 0 and k = n are allowed here: D = -inf and +inf there.
    const auto k_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(nd * direction_of_alpha(alpha_lo)[0])));
    const auto k_hi = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::ceil(nd * direction_of_alpha(alpha_hi)[0])));
    const auto prof = level_profile(w, x, x + e1, x + e2, n, k_lo, k_hi, exec);
    for (std::int64_t k = k_lo; k < k_hi; ++k) {
        const auto i = static_cast<std::size_t>(k - k_lo);
        const double d0 = prof.from_a[i] - prof.from_b[i];
        const double d1 = prof.from_a[i + 1] - prof.from_b[i + 1];
        if (d0 <= 0.0 && d1 > 0.0) {
            const double kk = static_cast<double>(k) + 0.5;
            const double a = alpha_of_direction(kk / nd, 1.0 - kk / nd);
            if (!(a > alpha_lo && a < alpha_hi)) return std::nullopt;
            return JumpRecord{x, x + e1, x + e2, a, d1 - d0, n, k, k + 1};
        }
    }
    return std::nullopt;
}

template <WeightSource W>
std::pair<BusemannField, BusemannField> bracket_fields(const LatticeWindow& window, const JumpRecord& jump,
                                                       const W& w, Exec exec) {
    const Site o = jump.origin;
    const std::int64_t n = jump.horizon;
    auto lo = field_to_target(window, o + Site{jump.k_minus, n - jump.k_minus}, w, o, exec);
    auto hi = field_to_target(window, o + Site{jump.k_plus, n - jump.k_plus}, w, o, exec);
    lo.sign = Sign::Minus;
    hi.sign = Sign::Plus;
    return {std::move(lo), std::move(hi)};
}

#define LPP_INSTANTIATE(W)                                                                                          \
    template CompetitionInterface competition_interface<W>(Site, const W&, std::int64_t);                          \
    template CifEstimate cif_direction<W>(Site, const W&, std::span<const double>, std::int64_t, Exec);            \
    template JumpScan scan_pair<W>(Site, Site, Site, const W&, double, double, std::int64_t, Exec);                \
    template JumpScan find_jump_directions<W>(Site, int, const W&, double, double, std::int64_t, Exec);            \
    template std::optional<JumpRecord> cif_jump<W>(Site, const W&, double, double, std::int64_t, Exec);            \
    template std::pair<BusemannField, BusemannField> bracket_fields<W>(const LatticeWindow&, const JumpRecord&,    \
                                                                       const W&, Exec);

LPP_INSTANTIATE(Environment)
LPP_INSTANTIATE(WeightField)

}  // namespace lpp
