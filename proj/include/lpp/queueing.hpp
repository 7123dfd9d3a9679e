#pragma once

#include <cstdint>
#include <vector>

namespace lpp {

struct QueueOutput {
    std::vector<double> Itilde;
    std::vector<double> J;
};

// Backward iteration from J_N = terminal_J:
//   J_k = Y_k + (J_{k+1} - I_k)^+,  Itilde_k = Y_k + (I_k - J_{k+1})^+.
QueueOutput queue_operator(const std::vector<double>& I, const std::vector<double>& Y, double terminal_J);

// Coupled line on indices 0..N-1. I ~ Exp(alpha), Y ~ Exp(beta); (Itilde, Y)
// has the joint law of the horizontal increments at the two directions.
struct QueueLine {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> I, Y, Itilde, J;  // core window
    double terminal_J = 0.0;              // J at the far end of the buffer
    std::int64_t burn_in = 0;
    bool regenerated = false;  // queue emptied inside the burn-in, so the core does not see the terminal value
    std::uint64_t seed = 0;

    std::size_t size() const { return I.size(); }
    std::vector<std::int64_t> jump_indices() const;  // k with Itilde_k > Y_k
};

QueueLine coupled_line_busemann(double alpha, double beta, std::int64_t N, std::uint64_t seed);

// C_{n-1} a^{n-1} b^n / (a+b)^{2n-1}.
double catalan_pmf(std::int64_t n, double alpha, double beta);
// C_{n-1} 2^{1-2n}.
double palm_pmf(std::int64_t n);
// Catalan number C_m (exact through m = 35).
double catalan_number(std::int64_t m);
// rho_n = 1{S_{2n} = 0} for n = 1..length of a simple symmetric walk.
std::vector<std::uint8_t> ssrw_zero_set(std::uint64_t seed, std::int64_t length);

// Two-sided walk on [lo, hi] with S_0 = 0.
struct WalkPath {
    std::int64_t lo = 0;
    std::vector<double> S;

    std::int64_t hi() const { return lo + static_cast<std::int64_t>(S.size()) - 1; }
    double s(std::int64_t n) const { return S[static_cast<std::size_t>(n - lo)]; }
    double step(std::int64_t i) const { return s(i) - s(i - 1); }
};

// steps[j] is X_{lo+1+j}; requires lo <= 0 <= lo + steps.size().
WalkPath make_walk(std::int64_t lo, const std::vector<double>& steps);
// S_n = sum_{i=1}^n (I_{i-1} - Y_i) for n = 0..N-1.
WalkPath walk_from_queue(const std::vector<double>& I, const std::vector<double>& Y);

struct WalkW {
    std::vector<double> W;             // W_k = inf_{k<n<=N-1} S_n - S_k for k = 0..N-2
    std::vector<std::uint8_t> truncated;  // inf attained at the last index
};

WalkW walk_W(const std::vector<double>& I, const std::vector<double>& Y);

struct LadderEpoch {
    std::int64_t epoch = 0;
    double height = 0.0;  // S_{lambda_i} - S_{lambda_{i-1}}
};

struct Ladder {
    std::vector<LadderEpoch> epochs;  // i >= 1
    bool truncated = false;           // walk ended before a further epoch
};

Ladder ladder_epochs(const WalkPath& w);

struct LastExits {
    std::vector<std::int64_t> forward;    // sigma_0, sigma_1, ...
    std::vector<std::uint8_t> forward_censored;  // inf over the future attained at the right end
    std::vector<std::int64_t> backward;   // sigma_{-1}, sigma_{-2}, ...
    bool start_censored = false;          // ran out of walk before another negative index
};

LastExits last_exit_times(const WalkPath& w);

}  // namespace lpp
