#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpp/lattice.hpp"
#include "lpp/weight_field.hpp"

namespace lpp {

// Serial kernels sweep rows; parallel kernels sweep anti-diagonals with OpenMP.
// Both perform identical floating-point operations, so results agree bit for bit.
enum class Exec { Serial, Parallel };

Exec default_exec();
int thread_count();
void set_thread_count(int n);

// G(anchor, y) for y in [anchor, corner], row-major over that rectangle.
template <WeightSource W>
std::vector<double> forward_passage(const W& w, Site anchor, Site corner, Exec exec);

// G(x, anchor) for x in [corner, anchor], row-major over that rectangle.
template <WeightSource W>
std::vector<double> backward_passage(const W& w, Site corner, Site anchor, Exec exec);

// Backward increment recursion over `region`:
//   U(x) = w_x + (U(x+e2) - V(x+e1))^+,  V(x) = w_x + (V(x+e1) - U(x+e2))^+
// north_U holds U on row y_max+1 (indexed by x - x_min), east_V holds V on
// column x_max+1 (indexed by y - y_min). Values on `keep` (inside region) are
// written row-major into U_out / V_out.
template <WeightSource W>
void increment_sweep(const W& w, const LatticeWindow& region, std::span<const double> north_U,
                     std::span<const double> east_V, const LatticeWindow& keep, std::span<double> U_out,
                     std::span<double> V_out, Exec exec);

// Passage times from two anchors a, b (each within one step of origin) to the
// level targets origin + (k, n-k), k in [k_lo, k_hi] within [0, n]. Only the
// band of sites that can reach those targets is swept. Targets an anchor cannot
// reach get -infinity.
struct LevelProfile {
    Site origin;
    std::int64_t n = 0;
    std::int64_t k_lo = 0;
    std::int64_t k_hi = 0;
    std::vector<double> from_a;  // G(a, v_k), index k - k_lo
    std::vector<double> from_b;  // G(b, v_k)
};

template <WeightSource W>
LevelProfile level_profile(const W& w, Site origin, Site a, Site b, std::int64_t n, std::int64_t k_lo,
                           std::int64_t k_hi, Exec exec);

}  // namespace lpp
