#pragma once

#include <array>
#include <vector>

#include "lpp/kernels.hpp"
#include "lpp/lattice.hpp"
#include "lpp/weight_field.hpp"

namespace lpp {

// Absolute tolerance separating genuine ties from float noise.
inline constexpr double kTieTol = 1e-9;

// Direction in the open segment, parametrized by alpha in (0,1):
// xi(alpha) = (a^2, (1-a)^2) / (a^2 + (1-a)^2).
class Direction {
public:
    explicit Direction(double alpha);
    static Direction from_xi1(double xi1);

    double alpha() const { return alpha_; }
    double xi1() const;
    double xi2() const { return 1.0 - xi1(); }
    // Gradient of the shape function at xi(alpha): (1/alpha, 1/(1-alpha)).
    std::array<double, 2> gradient() const { return {1.0 / alpha_, 1.0 / (1.0 - alpha_)}; }

    friend bool operator==(const Direction&, const Direction&) = default;

private:
    double alpha_;
};

double alpha_of_direction(double xi1, double xi2);
std::array<double, 2> direction_of_alpha(double alpha);
double shape_function(double xi1, double xi2);

enum class Orientation { FromAnchor, ToAnchor };

struct PassageTimes {
    Site anchor;
    Orientation orientation = Orientation::FromAnchor;
    LatticeWindow window;  // [anchor, upper] for FromAnchor, [lower, anchor] for ToAnchor
    std::vector<double> values;

    double operator[](Site s) const { return values[window.index(s)]; }
    double at(Site s) const;
};

// FromAnchor: G(anchor, y) for y >= anchor in the window.
// ToAnchor:   G(x, anchor) for x <= anchor in the window.
template <WeightSource W>
PassageTimes passage_times(Site anchor, Orientation o, const W& w, const LatticeWindow& window,
                           Exec exec = default_exec());

inline PassageTimes passage_times(Site anchor, Orientation o, const WeightField& f, Exec exec = default_exec()) {
    return passage_times(anchor, o, f, f.window(), exec);
}

// Max |G - (DP right-hand side)| over the swept rectangle.
template <WeightSource W>
double bellman_residual(const PassageTimes& G, const W& w);

// Geodesic from x to y, backtracked from y; ties prefer the e2-predecessor.
template <WeightSource W>
std::vector<Site> finite_geodesic(Site x, Site y, const W& w);

// Sum of weights along a path, endpoint excluded.
template <WeightSource W>
double path_weight(const std::vector<Site>& path, const W& w);

}  // namespace lpp
