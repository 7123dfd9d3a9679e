#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lpp/busemann.hpp"
#include "lpp/error.hpp"
#include "lpp/stats.hpp"

using namespace lpp;

namespace {

// Tree label of y relative to x: 1 if the geodesic x -> y passes x+e1, 2 if x+e2.
Grid<int> tree_labels(const WeightField& f, Site x, const LatticeWindow& win) {
    const auto G = passage_times(x, Orientation::FromAnchor, f, win);
    Grid<int> lab(win, 0);
    for (std::int64_t y = win.y_min; y <= win.y_max; ++y)
        for (std::int64_t xx = win.x_min; xx <= win.x_max; ++xx) {
            const Site s{xx, y};
            if (s == x) continue;
            if (s == x + e1) { lab[s] = 1; continue; }
            if (s == x + e2) { lab[s] = 2; continue; }
            double best = -INFINITY;
            Site parent{};
            for (Site p : {s - e1, s - e2}) {
                if (!win.contains(p) || !dominated(x, p)) continue;
                const double h = G[p] + f[p];
                if (h > best) best = h, parent = p;
            }
            lab[s] = lab[parent];
        }
    return lab;
}

// B(x+e1, x+e2) = G(x+e1, v) - G(x+e2, v) toward the level-n target with column k, from full passage times.
double b12_oracle(const Environment& env, Site x, std::int64_t n, std::int64_t k) {
    const Site v = x + Site{k, n - k};
    const auto Ga = backward_passage(env, x + e1, v, Exec::Serial);
    const auto Gb = backward_passage(env, x + e2, v, Exec::Serial);
    return Ga.front() - Gb.front();
}

std::vector<double> antidiagonal_U(const BusemannField& B, std::int64_t level) {
    std::vector<double> out;
    for (std::int64_t i = 0; i <= level; ++i) {
        const Site s{B.window.x_min + i, B.window.y_min + level - i};
        if (B.window.contains(s)) out.push_back(B.u(s));
    }
    return out;
}

}  // namespace

TEST_CASE("target indices") {
    const Direction half(0.5);
    CHECK(target_index(half, Sign::None, 10) == 5);
    CHECK(target_index(half, Sign::Minus, 10) == 4);
    CHECK(target_index(half, Sign::Plus, 10) == 6);
    const auto d = Direction::from_xi1(0.375);
    CHECK(target_index(d, Sign::Minus, 100) == 37);
    CHECK(target_index(d, Sign::Plus, 100) == 38);
    CHECK_THROWS_AS(target_index(half, Sign::None, 1), DomainError);
}

TEST_CASE("field toward a target equals the passage-time definition") {
    const Environment env(5);
    const auto win = LatticeWindow::square(0, 2);
    const Site v{9, 7};
    const auto B = field_to_target(win, v, env);
    for (std::size_t i = 0; i < win.size(); ++i) {
        const Site x = win.site_at(i);
        const double Gx = backward_passage(env, x, v, Exec::Serial).front();
        const double G1 = backward_passage(env, x + e1, v, Exec::Serial).front();
        const double G2 = backward_passage(env, x + e2, v, Exec::Serial).front();
        CHECK(B.u(x) == doctest::Approx(Gx - G1).epsilon(1e-12));
        CHECK(B.v(x) == doctest::Approx(Gx - G2).epsilon(1e-12));
    }
    CHECK_THROWS_AS(field_to_target(win, Site{2, 9}, env), DomainError);
}

TEST_CASE("recovery and cocycle closure in both modes") {
    const Environment env(6);
    const auto win = LatticeWindow{-10, 40, 3, 60};
    const auto st = stationary_busemann_field(win, 0.35, env, 11);
    CHECK(recovery_residual(st, env) < 1e-9);
    CHECK(cocycle_residual(st) < 1e-9);
    const DirectionSpec d[1] = {{Direction(0.6), Sign::Plus}};
    const auto hz = horizon_busemann_fields(win, d, 512, env, win.lower())[0];
    CHECK(recovery_residual(hz, env) < 1e-9);
    CHECK(cocycle_residual(hz) < 1e-9);
    CHECK(hz.mode == Construction::Horizon);
    CHECK(hz.target.x > win.x_max);
    CHECK(hz.target.y > win.y_max);
}

TEST_CASE("Busemann values along staircases") {
    const Environment env(8);
    const auto win = LatticeWindow::square(0, 30);
    const auto B = stationary_busemann_field(win, 0.45, env, 3);
    CHECK(busemann_value(B, Site{4, 4}, Site{4, 4}) == 0.0);
    // Vertical-first staircase from (2,3) to (20,25) against the default horizontal-first one.
    double s = 0.0;
    for (std::int64_t y = 3; y < 25; ++y) s += B.v({2, y});
    for (std::int64_t x = 2; x < 20; ++x) s += B.u({x, 25});
    CHECK(std::abs(busemann_value(B, Site{2, 3}, Site{20, 25}) - s) < 1e-9);
    Stream rng(1);
    for (int t = 0; t < 50; ++t) {
        auto pick = [&] { return Site{std::int64_t(rng.next() % 31), std::int64_t(rng.next() % 31)}; };
        const Site x = pick(), y = pick(), z = pick();
        CHECK(std::abs(busemann_value(B, x, y) + busemann_value(B, y, z) - busemann_value(B, x, z)) < 1e-9);
    }
    CHECK_THROWS_AS(busemann_value(B, Site{0, 0}, Site{31, 0}), DomainError);
}

TEST_CASE("stationary increments: Exp laws, mean 1/alpha, no adjacent correlation") {
    const double a = 0.3;
    const auto win = LatticeWindow::square(0, 999);
    std::vector<double> u, v;
    double corr_num = 0.0, corr_n = 0.0;
    for (std::uint64_t r = 0; r < 100; ++r) {
        const Environment env(derive_seed(40, "stationary", r));
        const auto B = stationary_busemann_field(win, a, env, derive_seed(41, "boundary", r));
        const auto d = antidiagonal_U(B, 999);
        if (r < 10) {
            for (std::size_t i = 0; i + 1 < d.size(); ++i) {
                corr_num += (d[i] - 1 / a) * (d[i + 1] - 1 / a);
                corr_n += 1;
            }
            for (std::int64_t i = 0; i < 999; ++i) v.push_back(B.v(Site{i + 1, 998 - i}));
        }
        u.insert(u.end(), d.begin(), d.end());
    }
    const std::vector<double> u10(u.begin(), u.begin() + 10000);
    CHECK(distribution_tests("U", u10, {}, Reference::exponential(a), 0.05).passed());
    CHECK(distribution_tests("V", v, {}, Reference::exponential(1 - a), 0.05).passed());
    const double corr = corr_num / corr_n * a * a;  // Var U = 1/a^2
    CHECK(std::abs(corr) < 0.02);
    const auto m = mean_se(u);
    CHECK(u.size() == 100000);
    CHECK(std::abs(m.mean - 1 / a) < 3 * m.se);
}

TEST_CASE("coupled horizon fields are monotone in the direction") {
    const Environment env(12);
    const auto win = LatticeWindow::square(0, 80);
    const DirectionSpec d[4] = {{Direction(0.3), Sign::Minus}, {Direction(0.3), Sign::Plus},
                                {Direction(0.5), Sign::None}, {Direction(0.7), Sign::Plus}};
    const auto B = horizon_busemann_fields(win, d, 1024, env);
    for (std::size_t j = 0; j + 1 < B.size(); ++j) {
        CHECK(B[j].target.x <= B[j + 1].target.x);
        std::size_t bad = 0;
        for (std::size_t i = 0; i < win.size(); ++i) bad += B[j].U[i] < B[j + 1].U[i] || B[j].V[i] > B[j + 1].V[i];
        CHECK(bad == 0);
    }
}

TEST_CASE("horizon stabilization") {
    const auto win = LatticeWindow::square(0, 15);
    std::vector<double> avg(4, 0.0);
    for (std::uint64_t r = 0; r < 6; ++r) {
        const Environment env(derive_seed(3, "stab", r));
        const auto s = stabilized_busemann_field(win, {Direction(0.5), Sign::None}, 256, 8192, env, kTieTol);
        for (std::size_t i = 0; i < std::min<std::size_t>(4, s.history.size()); ++i) avg[i] += s.history[i].second;
        for (std::size_t i = s.history.size(); i < 4; ++i) avg[i] += 0.0;
        if (s.stabilized) CHECK(s.unstabilized_edges == 0);
    }
    CHECK(avg[0] > avg[3]);
    CHECK(avg[1] >= avg[3]);
    CHECK_THROWS_AS(stabilized_busemann_field(win, {Direction(0.5), Sign::None}, 256, 300, Environment(1)), DomainError);
}

TEST_CASE("competition interface: 2x2 example steps e1 first") {
    const WeightField f(LatticeWindow::square(0, 1), {1.0, 2.0, 3.0, 1.0}, 0);
    const auto ci = competition_interface(Site{}, f, 1);
    REQUIRE(ci.dual_path.size() == 2);
    CHECK(ci.dual_path[1] == e1);
    CHECK(finite_geodesic(Site{}, Site{1, 1}, f)[1] == e2);
}

TEST_CASE("competition interface separates the two subtrees") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const std::int64_t n = 60;
        const Site x{3, -2};
        const auto win = LatticeWindow::spanning(x, x + Site{n, n});
        const auto f = sample_weight_field(win, seed);
        const auto ci = competition_interface(x, f, n);
        const auto lab = tree_labels(f, x, win);
        for (Site z : ci.dual_path) {
            if (win.contains(z + e1)) CHECK(lab[z + e1] == 1);
            if (win.contains(z + e2)) CHECK(lab[z + e2] == 2);
        }
    }
}

TEST_CASE("competition interface directions are uniform in alpha") {
    // P(alpha* < a) = P(Exp(1-a) > Exp(a)) = a at the origin.
    std::vector<double> ends;
    for (std::uint64_t r = 0; r < 100; ++r) {
        const Environment env(derive_seed(5, "cif", r));
        const auto ci = competition_interface(Site{}, env, 1000);
        const Site z = ci.dual_path.back();
        const double xi1 = (double(z.x) + 0.5) / (double(z.level()) + 1.0);
        ends.push_back(alpha_of_direction(xi1, 1.0 - xi1));
    }
    const double D = ks_statistic(ends, [](double t) { return std::clamp(t, 0.0, 1.0); });
    CHECK(D < ks_critical(ends.size(), 0.01));
    const auto m = mean_se(ends);
    CHECK(m.mean > 0.3);
    CHECK(m.mean < 0.7);
}

TEST_CASE("cif_direction brackets a sign change and is shift covariant") {
    const auto grid = alpha_grid(0.02, 0.98, 0.02);
    const std::int64_t n = 512;
    for (std::uint64_t r = 0; r < 5; ++r) {
        const Environment env(derive_seed(9, "cifdir", r));
        const auto est = cif_direction(Site{}, env, grid, n);
        CHECK(est.alpha_lo < est.alpha_hi);
        const auto klo = target_index(Direction(est.alpha_lo), Sign::None, n);
        const auto khi = target_index(Direction(est.alpha_hi), Sign::None, n);
        if (klo > 0) CHECK(b12_oracle(env, Site{}, n, klo) <= 0.0);
        if (khi < n) CHECK(b12_oracle(env, Site{}, n, khi) > 0.0);
        const Site x{7, 4};
        const auto a = cif_direction(x, env, grid, n);
        const auto b = cif_direction(Site{}, env.shifted(x), grid, n);
        CHECK(a.direction.alpha() == b.direction.alpha());
        CHECK(a.grid_index == b.grid_index);
    }
}

TEST_CASE("cif_direction is stable between horizons n and 2n") {
    // The grid must be coarser than the n^{-1/3} wander of the finite-horizon estimate.
    const double step = 0.02;
    const auto grid = alpha_grid(0.001, 0.999, step);
    int agree = 0;
    for (std::uint64_t r = 0; r < 100; ++r) {
        const Environment env(derive_seed(10, "cifstab", r));
        const double a = cif_direction(Site{}, env, grid, 1024).direction.alpha();
        const double b = cif_direction(Site{}, env, grid, 2048).direction.alpha();
        agree += std::abs(a - b) < 2 * step;
    }
    CHECK(agree >= 95);
}

TEST_CASE("jump scan agrees with a full-DP step oracle") {
    const std::int64_t n = 150;
    for (std::uint64_t r = 0; r < 5; ++r) {
        const Environment env(derive_seed(11, "scan", r));
        for (int axis : {1, 2}) {
            const auto scan = find_jump_directions(Site{}, axis, env, 0.05, 0.95, n);
            for (std::size_t i = 0; i < scan.records.size(); ++i) {
                CHECK(scan.records[i].gap > 0.0);
                if (i) CHECK(scan.records[i].alpha_star > scan.records[i - 1].alpha_star);
            }
            const auto G0 = forward_passage(env, Site{}, Site{n, n}, Exec::Serial);
            const Site y = unit(axis);
            const auto Gy = forward_passage(env, y, Site{n, n}, Exec::Serial);
            const auto w0 = LatticeWindow::spanning(Site{}, Site{n, n}), wy = LatticeWindow::spanning(y, Site{n, n});
            auto D = [&](std::int64_t k) {
                const Site v{k, n - k};
                return G0[w0.index(v)] - Gy[wy.index(v)];
            };
            std::vector<std::pair<std::int64_t, double>> steps;
            for (std::int64_t k = scan.k_lo; k < scan.k_hi; ++k)
                if (std::abs(D(k + 1) - D(k)) > kTieTol) steps.emplace_back(k, std::abs(D(k + 1) - D(k)));
            REQUIRE(steps.size() == scan.records.size());
            for (std::size_t i = 0; i < steps.size(); ++i) {
                CHECK(scan.records[i].k_minus == steps[i].first);
                CHECK(scan.records[i].k_plus == steps[i].first + 1);
                CHECK(scan.records[i].gap == doctest::Approx(steps[i].second).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("bracket fields straddle the jump") {
    const Environment env(21);
    const auto scan = find_jump_directions(Site{}, 1, env, 0.2, 0.8, 2048);
    REQUIRE_FALSE(scan.records.empty());
    const auto& j = scan.records.front();
    const auto [lo, hi] = bracket_fields(LatticeWindow::square(0, 20), j, env);
    CHECK(std::abs(lo.u(Site{}) - hi.u(Site{}) - j.gap) < 1e-9);
    CHECK(lo.target == Site{j.k_minus, 2048 - j.k_minus});
    CHECK(hi.target == Site{j.k_plus, 2048 - j.k_plus});
}

TEST_CASE("jump mass on an edge: Bernoulli times Exp(alpha(zeta))") {
    const double lo = 0.2, hi = 0.4;
    std::vector<double> pos;
    const int R = 600;
    for (int r = 0; r < R; ++r) {
        const Environment env(derive_seed(12, "mass", r));
        const auto scan = find_jump_directions(Site{}, 1, env, lo, hi, 512);
        double m = 0.0;
        for (const auto& j : scan.records) m += j.gap;
        if (m > 0) pos.push_back(m);
    }
    const double p = double(pos.size()) / R, se = std::sqrt(0.25 / R);
    CHECK(std::abs(p - (1 - lo / hi)) < 3 * se);
    CHECK(distribution_tests("mass", pos, {}, Reference::exponential(lo), 0.05).passed());
}
