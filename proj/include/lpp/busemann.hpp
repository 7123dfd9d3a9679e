#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lpp/kernels.hpp"
#include "lpp/lattice.hpp"
#include "lpp/passage.hpp"
#include "lpp/weight_field.hpp"

namespace lpp {

enum class Sign { Minus, Plus, None };
enum class Construction { StationaryExact, Horizon };

const char* to_string(Sign s);

// Edge increments U(x) = B(x, x+e1), V(x) = B(x, x+e2) on a window.
struct BusemannField {
    Direction direction{0.5};
    Sign sign = Sign::None;
    Construction mode = Construction::StationaryExact;
    std::int64_t horizon = 0;  // level of the target above `origin` (horizon mode)
    Site origin{};
    Site target{};
    std::uint64_t environment_id = 0;
    std::uint64_t boundary_seed = 0;  // stationary mode
    LatticeWindow window;
    std::vector<double> U;
    std::vector<double> V;

    double u(Site s) const { return U[window.index(s)]; }
    double v(Site s) const { return V[window.index(s)]; }
    double increment(Site s, int i) const { return i == 1 ? u(s) : v(s); }
};

struct DirectionSpec {
    Direction direction{0.5};
    Sign sign = Sign::None;
};

// Stationary construction: north boundary U ~ Exp(alpha), east boundary
// V ~ Exp(1-alpha), both i.i.d. from boundary_seed, then the down-left sweep.
template <WeightSource W>
BusemannField stationary_busemann_field(const LatticeWindow& window, double alpha, const W& w,
                                        std::uint64_t boundary_seed, Exec exec = default_exec());

// Target column k on level n for a direction: NONE rounds n*xi1, MINUS takes the
// nearest target strictly left of it, PLUS the nearest strictly right.
std::int64_t target_index(const Direction& d, Sign s, std::int64_t n);

// Increments G(x,v) - G(x+e_i,v) toward a fixed target v, which must lie
// strictly above and to the right of the window. The direction label is
// taken from target - origin.
template <WeightSource W>
BusemannField field_to_target(const LatticeWindow& window, Site target, const W& w, Site origin = {},
                              Exec exec = default_exec());

// Coupled finite-horizon fields on one environment; targets are
// origin + (k, n-k) with k from target_index.
template <WeightSource W>
std::vector<BusemannField> horizon_busemann_fields(const LatticeWindow& window, std::span<const DirectionSpec> dirs,
                                                   std::int64_t n, const W& w, Site origin = {},
                                                   Exec exec = default_exec());

std::vector<BusemannField> horizon_busemann_fields(const LatticeWindow& window, std::span<const DirectionSpec> dirs,
                                                   std::int64_t n, std::uint64_t seed);

struct StabilizedField {
    BusemannField field;
    bool stabilized = false;
    std::size_t unstabilized_edges = 0;
    std::vector<std::uint8_t> unstable;  // per site: bit 0 = U edge, bit 1 = V edge
    std::vector<std::pair<std::int64_t, double>> history;  // (n, fraction of edges changed between n and 2n)
};

// Doubles the horizon from n0 until no increment moves by more than tol
// between n and 2n, or n reaches n_cap.
template <WeightSource W>
StabilizedField stabilized_busemann_field(const LatticeWindow& window, const DirectionSpec& dir, std::int64_t n0,
                                          std::int64_t n_cap, const W& w, double tol = kTieTol);

// B(x, y) by summing increments along a staircase through min(x, y).
double busemann_value(const BusemannField& B, Site x, Site y);

// Max |min(U,V) - w| over the window.
template <WeightSource W>
double recovery_residual(const BusemannField& B, const W& w);

// Max |U(x) + V(x+e1) - V(x) - U(x+e2)| over unit squares inside the window.
double cocycle_residual(const BusemannField& B);

// Dual path started at x + (1/2,1/2); points stored by their lower-left primal site.
struct CompetitionInterface {
    Site root;
    std::vector<Site> dual_path;
};

template <WeightSource W>
CompetitionInterface competition_interface(Site x, const W& w, std::int64_t n);

struct CifEstimate {
    Direction direction{0.5};
    double alpha_lo = 0.0;  // last grid value with B(x+e1,x+e2) <= 0
    double alpha_hi = 0.0;  // first grid value with B(x+e1,x+e2) > 0
    std::size_t grid_index = 0;  // index of alpha_hi
};

// Bisection over an increasing alpha grid on the sign of B^alpha(x+e1, x+e2),
// each evaluated from a horizon-n field toward x + (k, n-k).
template <WeightSource W>
CifEstimate cif_direction(Site x, const W& w, std::span<const double> alpha_grid, std::int64_t n,
                          Exec exec = default_exec());

// lo, lo+step, ... up to hi; hi is appended when the steps miss it.
std::vector<double> alpha_grid(double lo, double hi, double step);

struct JumpRecord {
    Site origin;  // targets are origin + (k, horizon - k)
    Site from;
    Site to;
    double alpha_star = 0.0;
    double gap = 0.0;
    std::int64_t horizon = 0;
    std::int64_t k_minus = 0;  // last target index before the step
    std::int64_t k_plus = 0;   // first target index after the step
};

struct JumpScan {
    std::vector<JumpRecord> records;  // sorted by alpha_star
    double alpha_lo = 0.0;            // requested range
    double alpha_hi = 0.0;
    double covered_lo = 0.0;          // directions actually spanned by the targets
    double covered_hi = 0.0;
    std::int64_t k_lo = 0;
    std::int64_t k_hi = 0;
    double min_spacing = 0.0;  // smallest alpha gap between consecutive jumps (0 if fewer than two)
};

// Steps of D(k) = G(from, v_k) - G(to, v_k) along level n above x, where
// v_k = x + (k, n-k). `from` and `to` must each be x, x+e1 or x+e2.
template <WeightSource W>
JumpScan scan_pair(Site x, Site from, Site to, const W& w, double alpha_lo, double alpha_hi, std::int64_t n,
                   Exec exec = default_exec());

template <WeightSource W>
JumpScan find_jump_directions(Site x, int axis, const W& w, double alpha_lo, double alpha_hi, std::int64_t n,
                              Exec exec = default_exec());

// The step of B(x+e1, x+e2) across zero along level n, if inside the range.
template <WeightSource W>
std::optional<JumpRecord> cif_jump(Site x, const W& w, double alpha_lo, double alpha_hi, std::int64_t n,
                                   Exec exec = default_exec());

// Coupled bracket fields around a jump: targets k_minus and k_plus.
template <WeightSource W>
std::pair<BusemannField, BusemannField> bracket_fields(const LatticeWindow& window, const JumpRecord& jump,
                                                       const W& w, Exec exec = default_exec());

}  // namespace lpp
