#include "lpp/kernels.hpp"

#include <algorithm>
#include <limits>

#include <omp.h>

#include "lpp/error.hpp"

namespace lpp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class W>
void require_cover(const W& w, const LatticeWindow& region, const char* who) {
    if (!covers(w, region)) throw DomainError(std::string(who) + ": region " + to_string(region) + " exceeds the weight field");
}

inline void increment_step(double w, double u_north, double v_east, double& u, double& v) {
    const double d = u_north - v_east;
    u = w + (d > 0.0 ? d : 0.0);
    v = w + (d < 0.0 ? -d : 0.0);
}

}  // namespace

Exec default_exec() { return omp_get_max_threads() > 1 ? Exec::Parallel : Exec::Serial; }
int thread_count() { return omp_get_max_threads(); }
void set_thread_count(int n) {
    if (n > 0) omp_set_num_threads(n);
}

template <WeightSource W>
std::vector<double> forward_passage(const W& w, Site anchor, Site corner, Exec exec) {
    if (!dominated(anchor, corner)) throw DomainError("forward_passage: corner must dominate anchor");
    require_cover(w, LatticeWindow::spanning(anchor, corner), "forward_passage");
    const std::int64_t Wd = corner.x - anchor.x + 1;
    const std::int64_t Ht = corner.y - anchor.y + 1;
    std::vector<double> G(static_cast<std::size_t>(Wd * Ht));
    if (exec == Exec::Serial) {
        std::vector<double> h(static_cast<std::size_t>(Wd), kNegInf);
        for (std::int64_t j = 0; j < Ht; ++j) {
            double h_left = kNegInf;
            for (std::int64_t i = 0; i < Wd; ++i) {
                const double g = (i == 0 && j == 0) ? 0.0 : std::max(h_left, h[static_cast<std::size_t>(i)]);
                G[static_cast<std::size_t>(j * Wd + i)] = g;
                h_left = g + w.weight({anchor.x + i, anchor.y + j});
                h[static_cast<std::size_t>(i)] = h_left;
            }
        }
        return G;
    }
    std::vector<double> buf[2] = {std::vector<double>(static_cast<std::size_t>(Wd), kNegInf),
                                  std::vector<double>(static_cast<std::size_t>(Wd), kNegInf)};
#pragma omp parallel
    for (std::int64_t d = 0; d <= Wd + Ht - 2; ++d) {
        const auto& prev = buf[(d + 1) & 1];
        auto& cur = buf[d & 1];
        const std::int64_t i0 = std::max<std::int64_t>(0, d - (Ht - 1));
        const std::int64_t i1 = std::min<std::int64_t>(Wd - 1, d);
#pragma omp for schedule(static)
        for (std::int64_t i = i0; i <= i1; ++i) {
            const std::int64_t j = d - i;
            const double left = i > 0 ? prev[static_cast<std::size_t>(i - 1)] : kNegInf;
            const double below = j > 0 ? prev[static_cast<std::size_t>(i)] : kNegInf;
            const double g = (d == 0) ? 0.0 : std::max(left, below);
            G[static_cast<std::size_t>(j * Wd + i)] = g;
            cur[static_cast<std::size_t>(i)] = g + w.weight({anchor.x + i, anchor.y + j});
        }
    }
    return G;
}

template <WeightSource W>
std::vector<double> backward_passage(const W& w, Site corner, Site anchor, Exec exec) {
    if (!dominated(corner, anchor)) throw DomainError("backward_passage: anchor must dominate corner");
    require_cover(w, LatticeWindow::spanning(corner, anchor), "backward_passage");
    const std::int64_t Wd = anchor.x - corner.x + 1;
    const std::int64_t Ht = anchor.y - corner.y + 1;
    std::vector<double> G(static_cast<std::size_t>(Wd * Ht));
    if (exec == Exec::Serial) {
        std::vector<double> up(static_cast<std::size_t>(Wd), kNegInf);
        for (std::int64_t j = Ht - 1; j >= 0; --j) {
            double right = kNegInf;
            for (std::int64_t i = Wd - 1; i >= 0; --i) {
                double g;
                if (i == Wd - 1 && j == Ht - 1)
                    g = 0.0;
                else
                    g = w.weight({corner.x + i, corner.y + j}) + std::max(right, up[static_cast<std::size_t>(i)]);
                G[static_cast<std::size_t>(j * Wd + i)] = g;
                up[static_cast<std::size_t>(i)] = g;
                right = g;
            }
        }
        return G;
    }
    std::vector<double> buf[2] = {std::vector<double>(static_cast<std::size_t>(Wd), kNegInf),
                                  std::vector<double>(static_cast<std::size_t>(Wd), kNegInf)};
    const std::int64_t dmax = Wd + Ht - 2;
#pragma omp parallel
    for (std::int64_t d = dmax; d >= 0; --d) {
        const auto& prev = buf[(d + 1) & 1];
        auto& cur = buf[d & 1];
        const std::int64_t i0 = std::max<std::int64_t>(0, d - (Ht - 1));
        const std::int64_t i1 = std::min<std::int64_t>(Wd - 1, d);
#pragma omp for schedule(static)
        for (std::int64_t i = i0; i <= i1; ++i) {
            const std::int64_t j = d - i;
            double g;
            if (d == dmax) {
                g = 0.0;
            } else {
                const double right = i + 1 < Wd ? prev[static_cast<std::size_t>(i + 1)] : kNegInf;
                const double up = j + 1 < Ht ? prev[static_cast<std::size_t>(i)] : kNegInf;
                g = w.weight({corner.x + i, corner.y + j}) + std::max(right, up);
            }
            G[static_cast<std::size_t>(j * Wd + i)] = g;
            cur[static_cast<std::size_t>(i)] = g;
        }
    }
    return G;
}

template <WeightSource W>
void increment_sweep(const W& w, const LatticeWindow& region, std::span<const double> north_U,
                     std::span<const double> east_V, const LatticeWindow& keep, std::span<double> U_out,
                     std::span<double> V_out, Exec exec) {
    validate(region);
    require_cover(w, region, "increment_sweep");
    if (!region.contains(keep)) throw DomainError("increment_sweep: kept window must lie inside the region");
    const std::int64_t Wd = region.width();
    const std::int64_t Ht = region.height();
    if (north_U.size() != static_cast<std::size_t>(Wd) || east_V.size() != static_cast<std::size_t>(Ht))
        throw DomainError("increment_sweep: boundary size mismatch");
    if (U_out.size() != keep.size() || V_out.size() != keep.size())
        throw DomainError("increment_sweep: output size mismatch");

    auto store = [&](Site s, double u, double v) {
        if (keep.contains(s)) {
            const auto k = keep.index(s);
            U_out[k] = u;
            V_out[k] = v;
        }
    };

    if (exec == Exec::Serial) {
        std::vector<double> urow(north_U.begin(), north_U.end());
        for (std::int64_t j = Ht - 1; j >= 0; --j) {
            double v_east = east_V[static_cast<std::size_t>(j)];
            for (std::int64_t i = Wd - 1; i >= 0; --i) {
                const Site s{region.x_min + i, region.y_min + j};
                double u, v;
                increment_step(w.weight(s), urow[static_cast<std::size_t>(i)], v_east, u, v);
                urow[static_cast<std::size_t>(i)] = u;
                v_east = v;
                store(s, u, v);
            }
        }
        return;
    }

    std::vector<double> ub[2] = {std::vector<double>(static_cast<std::size_t>(Wd)),
                                 std::vector<double>(static_cast<std::size_t>(Wd))};
    std::vector<double> vb[2] = {std::vector<double>(static_cast<std::size_t>(Wd)),
                                 std::vector<double>(static_cast<std::size_t>(Wd))};
#pragma omp parallel
    for (std::int64_t d = Wd + Ht - 2; d >= 0; --d) {
        const auto& up = ub[(d + 1) & 1];
        const auto& vp = vb[(d + 1) & 1];
        auto& uc = ub[d & 1];
        auto& vc = vb[d & 1];
        const std::int64_t i0 = std::max<std::int64_t>(0, d - (Ht - 1));
        const std::int64_t i1 = std::min<std::int64_t>(Wd - 1, d);
#pragma omp for schedule(static)
        for (std::int64_t i = i0; i <= i1; ++i) {
            const std::int64_t j = d - i;
            const double u_north = j + 1 == Ht ? north_U[static_cast<std::size_t>(i)] : up[static_cast<std::size_t>(i)];
            const double v_east = i + 1 == Wd ? east_V[static_cast<std::size_t>(j)] : vp[static_cast<std::size_t>(i + 1)];
            const Site s{region.x_min + i, region.y_min + j};
            double u, v;
            increment_step(w.weight(s), u_north, v_east, u, v);
            uc[static_cast<std::size_t>(i)] = u;
            vc[static_cast<std::size_t>(i)] = v;
            store(s, u, v);
        }
    }
}

template <WeightSource W>
LevelProfile level_profile(const W& w, Site origin, Site a, Site b, std::int64_t n, std::int64_t k_lo,
                           std::int64_t k_hi, Exec exec) {
    const Site ar = a - origin;
    const Site br = b - origin;
    auto near = [](Site r) { return r.x >= 0 && r.y >= 0 && r.x + r.y <= 1; };
    if (!near(ar) || !near(br)) throw DomainError("level_profile: anchors must be within one step of the origin");
    if (n < 2 || k_lo < 0 || k_hi > n || k_lo > k_hi)
        throw DomainError("level_profile: target range must satisfy 0 <= k_lo <= k_hi <= n");

    require_cover(w, LatticeWindow::spanning(origin, origin + Site{k_hi, n - k_lo}), "level_profile");

    LevelProfile out;
    out.origin = origin;
    out.n = n;
    out.k_lo = k_lo;
    out.k_hi = k_hi;
    const auto nk = static_cast<std::size_t>(k_hi - k_lo + 1);
    out.from_a.assign(nk, kNegInf);
    out.from_b.assign(nk, kNegInf);
    const std::int64_t rmax = n - k_lo;
    const auto cols = static_cast<std::size_t>(k_hi + 1);

    if (exec == Exec::Serial) {
        std::vector<double> ha(cols, kNegInf), hb(cols, kNegInf);
        for (std::int64_t r = 0; r <= rmax; ++r) {
            double la = kNegInf, lb = kNegInf;
            const std::int64_t cmax = std::min(k_hi, n - r);
            for (std::int64_t c = 0; c <= cmax; ++c) {
                const auto ci = static_cast<std::size_t>(c);
                const double ga = (c == ar.x && r == ar.y) ? 0.0 : std::max(la, ha[ci]);
                const double gb = (c == br.x && r == br.y) ? 0.0 : std::max(lb, hb[ci]);
                if (c + r == n && c >= k_lo) {
                    out.from_a[static_cast<std::size_t>(c - k_lo)] = ga;
                    out.from_b[static_cast<std::size_t>(c - k_lo)] = gb;
                }
                const double om = w.weight({origin.x + c, origin.y + r});
                la = ga + om;
                lb = gb + om;
                ha[ci] = la;
                hb[ci] = lb;
            }
        }
        return out;
    }

    std::vector<double> ba[2] = {std::vector<double>(cols, kNegInf), std::vector<double>(cols, kNegInf)};
    std::vector<double> bb[2] = {std::vector<double>(cols, kNegInf), std::vector<double>(cols, kNegInf)};
#pragma omp parallel
    for (std::int64_t d = 0; d <= n; ++d) {
        const auto& pa = ba[(d + 1) & 1];
        const auto& pb = bb[(d + 1) & 1];
        auto& ca = ba[d & 1];
        auto& cb = bb[d & 1];
        const std::int64_t c0 = std::max<std::int64_t>(0, d - rmax);
        const std::int64_t c1 = std::min<std::int64_t>(k_hi, d);
#pragma omp for schedule(static)
        for (std::int64_t c = c0; c <= c1; ++c) {
            const std::int64_t r = d - c;
            const auto ci = static_cast<std::size_t>(c);
            const double la = c > 0 ? pa[ci - 1] : kNegInf;
            const double lb = c > 0 ? pb[ci - 1] : kNegInf;
            const double da = r > 0 ? pa[ci] : kNegInf;
            const double db = r > 0 ? pb[ci] : kNegInf;
            const double ga = (c == ar.x && r == ar.y) ? 0.0 : std::max(la, da);
            const double gb = (c == br.x && r == br.y) ? 0.0 : std::max(lb, db);
            if (d == n && c >= k_lo) {
                out.from_a[static_cast<std::size_t>(c - k_lo)] = ga;
                out.from_b[static_cast<std::size_t>(c - k_lo)] = gb;
            }
            const double om = w.weight({origin.x + c, origin.y + r});
            ca[ci] = ga + om;
            cb[ci] = gb + om;
        }
    }
    return out;
}

#define LPP_INSTANTIATE(W)                                                                                     \
    template std::vector<double> forward_passage<W>(const W&, Site, Site, Exec);                              \
    template std::vector<double> backward_passage<W>(const W&, Site, Site, Exec);                             \
    template void increment_sweep<W>(const W&, const LatticeWindow&, std::span<const double>,                 \
                                     std::span<const double>, const LatticeWindow&, std::span<double>,        \
                                     std::span<double>, Exec);                                                 \
    template LevelProfile level_profile<W>(const W&, Site, Site, Site, std::int64_t, std::int64_t,            \
                                           std::int64_t, Exec);

LPP_INSTANTIATE(Environment)
LPP_INSTANTIATE(WeightField)

}  // namespace lpp
