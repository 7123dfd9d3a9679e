// Serial vs parallel kernels: wall time and bitwise agreement.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <vector>

#include "lpp/busemann.hpp"
#include "lpp/kernels.hpp"
#include "lpp/rng.hpp"

using namespace lpp;

namespace {

double seconds(const std::function<void()>& f, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

bool same(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void report(const char* name, double ts, double tp, bool eq) {
    std::printf("%-18s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", name, ts, tp, ts / tp,
                eq ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 2000;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    const Environment env(12345);
    std::printf("threads=%d n=%lld\n", thread_count(), static_cast<long long>(n));
    bool ok = true;

    std::vector<double> a, b;
    const double t1 = seconds([&] { a = forward_passage(env, Site{}, Site{n, n}, Exec::Serial); }, reps);
    const double t2 = seconds([&] { b = forward_passage(env, Site{}, Site{n, n}, Exec::Parallel); }, reps);
    report("forward_passage", t1, t2, same(a, b));
    ok &= same(a, b);

    const double t3 = seconds([&] { a = backward_passage(env, Site{}, Site{n, n}, Exec::Serial); }, reps);
    const double t4 = seconds([&] { b = backward_passage(env, Site{}, Site{n, n}, Exec::Parallel); }, reps);
    report("backward_passage", t3, t4, same(a, b));
    ok &= same(a, b);

    const auto win = LatticeWindow::square(0, n / 4);
    BusemannField fs, fp;
    const Site target{n / 2, n / 2};
    const double t5 = seconds([&] { fs = field_to_target(win, target, env, Site{}, Exec::Serial); }, reps);
    const double t6 = seconds([&] { fp = field_to_target(win, target, env, Site{}, Exec::Parallel); }, reps);
    const bool eq = same(fs.U, fp.U) && same(fs.V, fp.V);
    report("increment_sweep", t5, t6, eq);
    ok &= eq;

    LevelProfile ps, pp;
    const double t7 = seconds([&] { ps = level_profile(env, Site{}, e1, e2, n, 0, n, Exec::Serial); }, reps);
    const double t8 = seconds([&] { pp = level_profile(env, Site{}, e1, e2, n, 0, n, Exec::Parallel); }, reps);
    const bool eq2 = same(ps.from_a, pp.from_a) && same(ps.from_b, pp.from_b);
    report("level_profile", t7, t8, eq2);
    ok &= eq2;

    return ok ? 0 : 1;
}
