#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpp/stats.hpp"

namespace lpp {

inline constexpr const char* kSuiteVersion = "1.0.0";

// "default" runs every criterion at full size; "quick" shrinks sample sizes
// for smoke tests (its verdicts are not meaningful).
struct SuiteConfig {
    std::string suite = "default";
    std::vector<std::string> tests;  // empty = all
    double level = 0.05;
};

std::vector<std::string> acceptance_test_names();
// Throws ConfigError listing the valid names.
void validate_suite_config(const SuiteConfig& cfg);

struct TestOutcome {
    StatsReport report;
    double runtime_s = 0.0;
    double runtime_limit_s = 0.0;  // 0 = no limit
    bool within_limit() const { return runtime_limit_s <= 0.0 || runtime_s <= runtime_limit_s; }
};

struct SuiteResult {
    std::uint64_t master_seed = 0;
    std::string suite;
    std::vector<TestOutcome> outcomes;

    std::size_t pass_count() const;
    std::size_t fail_count() const { return outcomes.size() - pass_count(); }
    // Runtimes are left out unless requested, so the summary is reproducible byte for byte.
    Json summary(bool timings = false) const;
};

SuiteResult acceptance_suite(const SuiteConfig& cfg, std::uint64_t master_seed,
                             const std::function<void(const TestOutcome&)>& on_done = {});

// Single criterion by name.
TestOutcome run_acceptance_test(const std::string& name, const SuiteConfig& cfg, std::uint64_t master_seed);

}  // namespace lpp
