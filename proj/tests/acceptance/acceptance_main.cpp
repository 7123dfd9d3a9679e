// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "lpp/acceptance.hpp"

int main(int argc, char** argv) {
    lpp::SuiteConfig cfg;
    std::uint64_t seed = 7;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--quick") cfg.suite = "quick";
        else if (a == "--seed" && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
        else cfg.tests.push_back(a);
    }
    int idx = 0;
    const auto res = lpp::acceptance_suite(cfg, seed, [&](const lpp::TestOutcome& o) {
        const auto& r = o.report;
        const bool ok = r.passed() && o.within_limit();
        std::printf("[%2d] %-4s %-22s statistic=%-12.6g threshold=%-10.6g %s runtime=%.1fs", ++idx, ok ? "PASS" : "FAIL",
                    r.test_name.c_str(), r.statistic, r.threshold,
                    r.convention == lpp::Convention::AtMost ? "(<=)" : "(>=)", o.runtime_s);
        if (o.runtime_limit_s > 0) std::printf(" limit=%.0fs", o.runtime_limit_s);
        if (!r.note.empty()) std::printf("  %s", r.note.c_str());
        std::printf("\n");
        std::fflush(stdout);
    });
    int failed = 0;
    for (const auto& o : res.outcomes) failed += !(o.report.passed() && o.within_limit());
    std::printf("%zu criteria, %d failed\n", res.outcomes.size(), failed);
    if (std::getenv("LPP_ACCEPTANCE_JSON")) std::printf("%s\n", res.summary(true).dump(2).c_str());
    return failed ? 1 : 0;
}
