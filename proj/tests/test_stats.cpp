#include <doctest.h>

#include <cmath>

#include "lpp/acceptance.hpp"
#include "lpp/error.hpp"
#include "lpp/queueing.hpp"
#include "lpp/rng.hpp"
#include "lpp/stats.hpp"

using namespace lpp;

namespace {

std::vector<double> exp_samples(std::uint64_t seed, double rate, std::size_t n) {
    Stream s(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = s.exponential(rate);
    return v;
}

}  // namespace

TEST_CASE("kolmogorov distribution") {
    CHECK(kolmogorov_quantile(0.05) == doctest::Approx(1.3581).epsilon(1e-4));
    CHECK(kolmogorov_quantile(0.01) == doctest::Approx(1.6276).epsilon(1e-4));
    CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    for (double p : {0.001, 0.1, 0.5, 0.9}) CHECK(kolmogorov_survival(kolmogorov_quantile(p)) == doctest::Approx(p).epsilon(1e-8));
    CHECK(kolmogorov_survival(0.0) == doctest::Approx(1.0));
    CHECK(ks_critical(10000, 0.05) == doctest::Approx(1.3581 / 100).epsilon(2e-3));
    CHECK(ks_critical(100, 0.05) > ks_critical(1000, 0.05));
    CHECK_THROWS_AS(ks_critical(100, 0.0), DomainError);
}

TEST_CASE("ks statistic on a known sample") {
    // uniform cdf, samples at 0.1 0.5 0.9: D = max(1/3 - 0.1, ..., 0.9 - 2/3) = 0.2333...
    const double d = ks_statistic({0.9, 0.1, 0.5}, [](double x) { return x; });
    CHECK(d == doctest::Approx(0.7 / 3));
    CHECK_THROWS_AS(ks_statistic({}, [](double x) { return x; }), DomainError);
}

TEST_CASE("chi-square quantiles") {
    CHECK(chi_square_quantile(0.95, 1) == doctest::Approx(3.841459).epsilon(1e-6));
    CHECK(chi_square_quantile(0.999, 8) == doctest::Approx(26.12448).epsilon(1e-6));
    CHECK(chi_square_sf(chi_square_quantile(0.9, 5), 5) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("exponential reference accepts the right rate and rejects the wrong one") {
    const auto x = exp_samples(1, 2.0, 100000);
    const auto good = distribution_tests("good", x, {}, Reference::exponential(2.0), 0.05);
    CHECK(good.passed());
    CHECK(good.n_samples == 100000);
    CHECK(good.censored_fraction == 0.0);
    const auto bad = distribution_tests("bad", x, {}, Reference::exponential(1.0), 0.05);
    CHECK_FALSE(bad.passed());
    CHECK(bad.statistic > bad.threshold);
}

TEST_CASE("censoring") {
    const auto x = exp_samples(2, 1.0, 1000);
    std::vector<std::uint8_t> all(x.size(), 1);
    CHECK_THROWS_AS(distribution_tests("all", x, all, Reference::exponential(1.0), 0.05), DomainError);
    CHECK_THROWS_AS(distribution_tests("size", x, std::vector<std::uint8_t>(3, 0), Reference::exponential(1.0), 0.05), DomainError);

    std::vector<std::uint8_t> some(x.size(), 0);
    for (std::size_t i = 0; i < 150; ++i) some[i] = 1;
    const auto r = distribution_tests("heavy", x, some, Reference::exponential(1.0), 0.05);
    CHECK(r.censored_fraction == doctest::Approx(0.15));
    CHECK_FALSE(r.passed());

    for (std::size_t i = 50; i < 150; ++i) some[i] = 0;
    const auto ok = distribution_tests("light", x, some, Reference::exponential(1.0), 0.05);
    CHECK(ok.censored_fraction == doctest::Approx(0.05));
    CHECK(ok.passed());
}

TEST_CASE("finalize conventions") {
    StatsReport r;
    r.statistic = 2.0;
    r.threshold = 1.0;
    r.convention = Convention::AtLeast;
    finalize(r);
    CHECK(r.passed());
    r.convention = Convention::AtMost;
    finalize(r);
    CHECK_FALSE(r.passed());
    r.statistic = 0.5;
    r.censored_fraction = 0.2;
    finalize(r);
    CHECK_FALSE(r.passed());
}

TEST_CASE("pmf reference") {
    Stream s(3);
    std::vector<std::uint64_t> counts(9, 0);
    std::vector<double> vals;
    for (int i = 0; i < 50000; ++i) {
        // geometric on {1, 2, ...} with success 1/2
        int n = 1;
        while (s.coin()) ++n;
        ++counts[std::min(n, 9) - 1];
        vals.push_back(n);
    }
    const auto geo = Reference::table([](std::int64_t n) { return std::ldexp(1.0, -int(n)); }, 8);
    CHECK(chi_square_counts("geo", counts, geo, 0.01).passed());
    CHECK(distribution_tests("geo", vals, {}, geo, 0.01).passed());
    CHECK_FALSE(chi_square_counts("palm", counts, Reference::table(palm_pmf, 8), 0.01).passed());
    CHECK_THROWS_AS(chi_square_counts("x", {1, 2}, geo, 0.01), DomainError);
    CHECK_THROWS_AS(chi_square_counts("x", counts, Reference::exponential(1.0), 0.01), DomainError);
}

TEST_CASE("mean and standard error") {
    const auto m = mean_se({1.0, 2.0, 3.0, 4.0});
    CHECK(m.mean == 2.5);
    CHECK(m.n == 4);
    CHECK(m.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("run_replicas keeps index order") {
    const auto v = run_replicas<int>(100, [](std::size_t i) { return int(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == int(i * i));
}

TEST_CASE("densities") {
    DensityConfig cfg;
    cfg.window_sizes = {10, 20};
    cfg.replicas = 6;
    cfg.horizon = 512;
    cfg.seed = 4;

    cfg.alpha_lo = cfg.alpha_hi = 0.5;
    const auto zero = estimate_densities(cfg);
    for (const auto& d : zero.params["densities"]) {
        CHECK(d["kappa1"].get<double>() == 0.0);
        CHECK(d["kappa2"].get<double>() == 0.0);
        CHECK(d["kappa12"].get<double>() == 0.0);
    }

    std::vector<double> k1, k12;
    for (double w : {0.02, 0.1, 0.3}) {
        cfg.alpha_lo = 0.5 - w / 2;
        cfg.alpha_hi = 0.5 + w / 2;
        const auto r = estimate_densities(cfg);
        const auto& d = r.params["densities"].back();
        k1.push_back(d["kappa1"].get<double>());
        k12.push_back(d["kappa12"].get<double>());
        CHECK(d["kappa12"].get<double>() <= d["kappa1"].get<double>());
        CHECK(r.statistic < 3.0);
    }
    for (std::size_t i = 1; i < k1.size(); ++i) {
        CHECK(k1[i] >= k1[i - 1]);
        CHECK(k12[i] >= k12[i - 1]);
    }
    CHECK(k1.back() > 0.0);

    cfg.alpha_lo = 0.7;
    cfg.alpha_hi = 0.6;
    CHECK_THROWS_AS(estimate_densities(cfg), DomainError);
    cfg.alpha_lo = 0.001;
    cfg.alpha_hi = 0.5;
    CHECK_THROWS_AS(estimate_densities(cfg), DomainError);
}

TEST_CASE("acceptance suite names and validation") {
    const auto names = acceptance_test_names();
    REQUIRE(names.size() == 10);
    CHECK(names.front() == "exact_law_b4");
    CHECK(names.back() == "density_bound");

    SuiteConfig cfg;
    cfg.tests = {"no_such_test"};
    try {
        validate_suite_config(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        for (const auto& n : names) CHECK(msg.find(n) != std::string::npos);
    }
    cfg.tests = {};
    cfg.suite = "huge";
    CHECK_THROWS_AS(validate_suite_config(cfg), ConfigError);
}

TEST_CASE("quick suite is reproducible") {
    SuiteConfig cfg;
    cfg.suite = "quick";
    const auto a = acceptance_suite(cfg, 7).summary().dump();
    const auto b = acceptance_suite(cfg, 7).summary().dump();
    CHECK(a == b);

    const auto j = Json::parse(a);
    CHECK(j["suite"] == "quick");
    CHECK(j["master_seed"] == 7);
    CHECK(j["suite_version"] == kSuiteVersion);
    REQUIRE(j["reports"].size() == 10);
    CHECK(j["pass_count"].get<int>() + j["fail_count"].get<int>() == 10);
    CHECK_FALSE(j.contains("runtimes"));
    for (const auto& r : j["reports"]) {
        for (const char* key : {"test_name", "params", "n_samples", "statistic", "threshold", "verdict", "seeds", "censored_fraction"})
            CHECK(r.contains(key));
    }
    CHECK(acceptance_suite(cfg, 7).summary(true).contains("runtimes"));

    cfg.tests = {"palm_ssrw"};
    const auto one = acceptance_suite(cfg, 7);
    REQUIRE(one.outcomes.size() == 1);
    CHECK(one.outcomes[0].report.test_name == "palm_ssrw");
}
