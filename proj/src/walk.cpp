#include <limits>

#include "lpp/error.hpp"
#include "lpp/queueing.hpp"

namespace lpp {

WalkPath make_walk(std::int64_t lo, const std::vector<double>& steps) {
    const auto hi = lo + static_cast<std::int64_t>(steps.size());
    if (lo > 0 || hi < 0) throw DomainError("make_walk: range must contain 0");
    WalkPath w;
    w.lo = lo;
    w.S.assign(steps.size() + 1, 0.0);
    const auto z = static_cast<std::size_t>(-lo);
    for (std::size_t j = z + 1; j < w.S.size(); ++j) w.S[j] = w.S[j - 1] + steps[j - 1];
    for (std::size_t j = z; j-- > 0;) w.S[j] = w.S[j + 1] - steps[j];
    return w;
}

WalkPath walk_from_queue(const std::vector<double>& I, const std::vector<double>& Y) {
    if (I.size() != Y.size()) throw DomainError("walk: length mismatch");
    if (I.empty()) throw DomainError("walk: empty sequences");
    std::vector<double> steps(I.size() - 1);
    for (std::size_t i = 1; i < I.size(); ++i) steps[i - 1] = I[i - 1] - Y[i];
    return make_walk(0, steps);
}

WalkW walk_W(const std::vector<double>& I, const std::vector<double>& Y) {
    const auto w = walk_from_queue(I, Y);
    const std::int64_t last = w.hi();
    WalkW out;
    if (last < 1) return out;
    out.W.resize(static_cast<std::size_t>(last));
    out.truncated.resize(static_cast<std::size_t>(last));
    double m = std::numeric_limits<double>::infinity();
    bool at_end = false;
    for (std::int64_t k = last - 1; k >= 0; --k) {
        const double s = w.s(k + 1);
        if (s < m) {
            m = s;
            at_end = (k + 1 == last);
        }
        out.W[static_cast<std::size_t>(k)] = m - w.s(k);
        out.truncated[static_cast<std::size_t>(k)] = at_end;
    }
    return out;
}

Ladder ladder_epochs(const WalkPath& w) {
    Ladder out;
    std::int64_t prev = 0;
    for (std::int64_t n = 1; n <= w.hi(); ++n) {
        if (w.s(n) > w.s(prev)) {
            out.epochs.push_back({n, w.s(n) - w.s(prev)});
            prev = n;
        }
    }
    out.truncated = true;  // the walk always ends before the next epoch is observed
    return out;
}

LastExits last_exit_times(const WalkPath& w) {
    LastExits out;
    const std::int64_t hi = w.hi();
    // Suffix minimum over (n, hi] and whether it sits at hi.
    std::vector<double> m(static_cast<std::size_t>(hi - w.lo + 1), std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> at_end(m.size(), 0);
    for (std::int64_t n = hi - 1; n >= w.lo; --n) {
        const auto i = static_cast<std::size_t>(n - w.lo);
        const double s = w.s(n + 1);
        if (s < m[i + 1]) {
            m[i] = s;
            at_end[i] = (n + 1 == hi);
        } else {
            m[i] = m[i + 1];
            at_end[i] = at_end[i + 1];
        }
    }
    for (std::int64_t n = 0; n < hi; ++n) {
        const auto i = static_cast<std::size_t>(n - w.lo);
        if (w.s(n) < m[i]) {
            out.forward.push_back(n);
            out.forward_censored.push_back(at_end[i]);
        }
    }
    if (out.forward.empty()) {
        out.start_censored = true;
        return out;
    }
    std::int64_t cur = out.forward.front();
    std::int64_t k = cur - 1;
    while (true) {
        while (k >= w.lo && !(w.s(k) < w.s(cur))) --k;
        if (k < w.lo) {
            out.start_censored = true;
            break;
        }
        out.backward.push_back(k);
        cur = k;
        --k;
    }
    return out;
}

}  // namespace lpp
