#include "lpp/busemann.hpp"

#include <algorithm>
#include <cmath>

#include "lpp/error.hpp"
#include "lpp/rng.hpp"

namespace lpp {

const char* to_string(Sign s) {
    switch (s) {
        case Sign::Minus: return "minus";
        case Sign::Plus: return "plus";
        case Sign::None: return "none";
    }
    return "?";
}

template <WeightSource W>
BusemannField stationary_busemann_field(const LatticeWindow& window, double alpha, const W& w,
                                        std::uint64_t boundary_seed, Exec exec) {
    validate(window);
    BusemannField B;
    B.direction = Direction(alpha);
    B.mode = Construction::StationaryExact;
    B.environment_id = w.id();
    B.boundary_seed = boundary_seed;
    B.window = window;
    std::vector<double> north(static_cast<std::size_t>(window.width()));
    std::vector<double> east(static_cast<std::size_t>(window.height()));
    Stream sn(derive_seed(boundary_seed, "north-U"));
    for (auto& u : north) u = sn.exponential(alpha);
    Stream se(derive_seed(boundary_seed, "east-V"));
    for (auto& v : east) v = se.exponential(1.0 - alpha);
    B.U.resize(window.size());
    B.V.resize(window.size());
    increment_sweep(w, window, north, east, window, B.U, B.V, exec);
    return B;
}

std::int64_t target_index(const Direction& d, Sign s, std::int64_t n) {
    if (n < 2) throw DomainError("horizon must be at least 2");
    const double t = static_cast<double>(n) * d.xi1();
    std::int64_t k = 0;
    switch (s) {
        case Sign::None: k = std::llround(t); break;
        case Sign::Minus: k = static_cast<std::int64_t>(std::ceil(t)) - 1; break;
        case Sign::Plus: k = static_cast<std::int64_t>(std::floor(t)) + 1; break;
    }
    return k;
}

namespace {

template <WeightSource W>
BusemannField to_target(const LatticeWindow& window, Site target, const W& w, Site origin, Exec exec) {
    validate(window);
    if (!(target.x > window.x_max && target.y > window.y_max))
        throw DomainError("horizon too small: target " + to_string(target) + " must lie strictly above and right of window " +
                          to_string(window));
    BusemannField B;
    B.mode = Construction::Horizon;
    B.origin = origin;
    B.target = target;
    B.horizon = (target - origin).level();
    const std::int64_t k = target.x - origin.x;
    if (B.horizon > 0 && k > 0 && k < B.horizon)
        B.direction = Direction::from_xi1(static_cast<double>(k) / static_cast<double>(B.horizon));
    B.environment_id = w.id();
    B.window = window;
    const LatticeWindow region{window.x_min, target.x - 1, window.y_min, target.y - 1};
    std::vector<double> north(static_cast<std::size_t>(region.width()));
    std::vector<double> east(static_cast<std::size_t>(region.height()));
    for (std::int64_t x = region.x_min; x <= region.x_max; ++x)
        north[static_cast<std::size_t>(x - region.x_min)] = w.weight({x, target.y});
    for (std::int64_t y = region.y_min; y <= region.y_max; ++y)
        east[static_cast<std::size_t>(y - region.y_min)] = w.weight({target.x, y});
    B.U.resize(window.size());
    B.V.resize(window.size());
    increment_sweep(w, region, north, east, window, B.U, B.V, exec);
    return B;
}

}  // namespace

template <WeightSource W>
BusemannField field_to_target(const LatticeWindow& window, Site target, const W& w, Site origin, Exec exec) {
    return to_target(window, target, w, origin, exec);
}

template <WeightSource W>
std::vector<BusemannField> horizon_busemann_fields(const LatticeWindow& window, std::span<const DirectionSpec> dirs,
                                                   std::int64_t n, const W& w, Site origin, Exec exec) {
    validate(window);
    std::vector<BusemannField> out;
    out.reserve(dirs.size());
    for (const auto& d : dirs) {
        const std::int64_t k = target_index(d.direction, d.sign, n);
        if (k < 0 || k > n) throw DomainError("horizon too small for direction bracket");
        auto B = to_target(window, origin + Site{k, n - k}, w, origin, exec);
        B.direction = d.direction;
        B.sign = d.sign;
        out.push_back(std::move(B));
    }
    return out;
}

std::vector<BusemannField> horizon_busemann_fields(const LatticeWindow& window, std::span<const DirectionSpec> dirs,
                                                   std::int64_t n, std::uint64_t seed) {
    return horizon_busemann_fields(window, dirs, n, Environment(seed));
}

template <WeightSource W>
StabilizedField stabilized_busemann_field(const LatticeWindow& window, const DirectionSpec& dir, std::int64_t n0,
                                          std::int64_t n_cap, const W& w, double tol) {
    if (n0 < 2 || n_cap < 2 * n0) throw DomainError("stabilization needs 2 <= n0 and 2*n0 <= n_cap");
    StabilizedField out;
    const DirectionSpec one[1] = {dir};
    auto cur = std::move(horizon_busemann_fields(window, one, n0, w)[0]);
    for (std::int64_t n = n0; 2 * n <= n_cap; n *= 2) {
        auto next = std::move(horizon_busemann_fields(window, one, 2 * n, w)[0]);
        out.unstable.assign(window.size(), 0);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < window.size(); ++i) {
            if (std::abs(cur.U[i] - next.U[i]) > tol) out.unstable[i] |= 1, ++changed;
            if (std::abs(cur.V[i] - next.V[i]) > tol) out.unstable[i] |= 2, ++changed;
        }
        out.history.emplace_back(n, static_cast<double>(changed) / static_cast<double>(2 * window.size()));
        out.unstabilized_edges = changed;
        cur = std::move(next);
        if (changed == 0) {
            out.stabilized = true;
            break;
        }
    }
    out.field = std::move(cur);
    return out;
}

double busemann_value(const BusemannField& B, Site x, Site y) {
    if (!B.window.contains(x) || !B.window.contains(y))
        throw DomainError("busemann_value: no staircase inside the window between " + to_string(x) + " and " + to_string(y));
    const Site z{std::min(x.x, y.x), std::min(x.y, y.y)};
    auto from_z = [&](Site t) {
        double s = 0.0;
        for (std::int64_t a = z.x; a < t.x; ++a) s += B.u({a, z.y});
        for (std::int64_t b = z.y; b < t.y; ++b) s += B.v({t.x, b});
        return s;
    };
    return from_z(y) - from_z(x);
}

template <WeightSource W>
double recovery_residual(const BusemannField& B, const W& w) {
    double worst = 0.0;
    for (std::size_t i = 0; i < B.window.size(); ++i) {
        const double r = std::min(B.U[i], B.V[i]) - w.weight(B.window.site_at(i));
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double cocycle_residual(const BusemannField& B) {
    double worst = 0.0;
    const auto& win = B.window;
    for (std::int64_t y = win.y_min; y < win.y_max; ++y)
        for (std::int64_t x = win.x_min; x < win.x_max; ++x) {
            const Site s{x, y};
            const double r = B.u(s) + B.v(s + e1) - B.v(s) - B.u(s + e2);
            worst = std::max(worst, std::abs(r));
        }
    return worst;
}

#define LPP_INSTANTIATE(W)                                                                                      \
    template BusemannField stationary_busemann_field<W>(const LatticeWindow&, double, const W&, std::uint64_t, \
                                                        Exec);                                                  \
    template BusemannField field_to_target<W>(const LatticeWindow&, Site, const W&, Site, Exec);                  \
    template std::vector<BusemannField> horizon_busemann_fields<W>(                                             \
        const LatticeWindow&, std::span<const DirectionSpec>, std::int64_t, const W&, Site, Exec);             \
    template StabilizedField stabilized_busemann_field<W>(const LatticeWindow&, const DirectionSpec&,          \
                                                          std::int64_t, std::int64_t, const W&, double);        \
    template double recovery_residual<W>(const BusemannField&, const W&);

LPP_INSTANTIATE(Environment)
LPP_INSTANTIATE(WeightField)

}  // namespace lpp
