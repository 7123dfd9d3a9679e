#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lpp {

using Json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail };
// Pass iff statistic <= threshold (AtMost) or statistic >= threshold (AtLeast).
enum class Convention { AtMost, AtLeast };

inline constexpr double kMaxCensoredFraction = 0.10;

struct StatsReport {
    std::string test_name;
    Json params = Json::object();
    std::uint64_t n_samples = 0;
    double statistic = 0.0;
    double threshold = 0.0;
    Convention convention = Convention::AtMost;
    Verdict verdict = Verdict::Fail;
    std::vector<std::uint64_t> seeds;
    double censored_fraction = 0.0;
    std::string note;

    bool passed() const { return verdict == Verdict::Pass; }
    Json to_json() const;
};

// Sets the verdict from statistic/threshold; forces FAIL when censoring exceeds 10%.
void finalize(StatsReport& r);

// Kolmogorov distribution: P(K > k) and its inverse.
double kolmogorov_survival(double k);
double kolmogorov_quantile(double level);  // k with P(K > k) = level
// Critical value for the one-sample KS statistic D_n at the given level.
double ks_critical(std::size_t n, double level);
// D_n against a continuous cdf. Sorts a copy of the samples.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

double chi_square_quantile(double p, double df);
double chi_square_sf(double x, double df);

struct Reference {
    enum class Kind { Exponential, Pmf } kind = Kind::Exponential;
    double rate = 1.0;                          // Exponential
    std::function<double(std::int64_t)> pmf;    // Pmf over n >= 1
    std::int64_t max_bucket = 8;                // values above are pooled into one tail bucket

    static Reference exponential(double rate);
    static Reference table(std::function<double(std::int64_t)> pmf, std::int64_t max_bucket = 8);
};

// KS for exponential references, Pearson chi-square for pmfs. `censored`
// marks samples excluded from the fit (may be empty).
StatsReport distribution_tests(const std::string& name, const std::vector<double>& samples,
                               const std::vector<std::uint8_t>& censored, const Reference& ref, double level);

// Chi-square from integer counts of values 1..max_bucket plus a tail bucket.
StatsReport chi_square_counts(const std::string& name, const std::vector<std::uint64_t>& counts,
                              const Reference& ref, double level);

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};
MeanSe mean_se(const std::vector<double>& v);

// Runs fn(i) for i in [0, count) across threads; results stored by index.
template <class T, class F>
std::vector<T> run_replicas(std::size_t count, F&& fn) {
    std::vector<T> out(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
}

struct DensityConfig {
    double alpha_lo = 0.4;
    double alpha_hi = 0.6;
    std::vector<std::int64_t> window_sizes{50, 100};
    std::size_t replicas = 8;
    std::int64_t horizon = 2048;
    std::uint64_t seed = 1;
};

// Densities of dual sites carrying south, west and both edges of the
// instability graph over [zeta, eta], plus the frequency of the competition
// interface direction of the origin falling in [zeta, eta].
StatsReport estimate_densities(const DensityConfig& cfg);

}  // namespace lpp
