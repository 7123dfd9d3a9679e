#include "lpp/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "lpp/busemann.hpp"
#include "lpp/error.hpp"
#include "lpp/graphs.hpp"
#include "lpp/rng.hpp"

namespace lpp {

Json StatsReport::to_json() const {
    Json j;
    j["test_name"] = test_name;
    j["params"] = params;
    j["n_samples"] = n_samples;
    j["statistic"] = statistic;
    j["threshold"] = threshold;
    j["convention"] = convention == Convention::AtMost ? "statistic<=threshold" : "statistic>=threshold";
    j["verdict"] = passed() ? "PASS" : "FAIL";
    j["seeds"] = seeds;
    j["censored_fraction"] = censored_fraction;
    j["note"] = note;
    return j;
}

void finalize(StatsReport& r) {
    const bool ok = std::isfinite(r.statistic) &&
                    (r.convention == Convention::AtMost ? r.statistic <= r.threshold : r.statistic >= r.threshold);
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    if (r.censored_fraction > kMaxCensoredFraction) {
        r.verdict = Verdict::Fail;
        if (!r.note.empty()) r.note += "; ";
        r.note += "censored fraction exceeds 10%";
    }
}

double kolmogorov_survival(double k) {
    if (k <= 0.0) return 1.0;
    if (k < 1.0) {
        // Small-k form: P(K <= k) = sqrt(2 pi)/k sum exp(-(2j-1)^2 pi^2 / (8 k^2)).
        const double c = M_PI * M_PI / (8.0 * k * k);
        double s = 0.0;
        for (int j = 1; j <= 50; ++j) {
            const double t = std::exp(-double((2 * j - 1) * (2 * j - 1)) * c);
            s += t;
            if (t < 1e-18) break;
        }
        return 1.0 - std::sqrt(2.0 * M_PI) / k * s;
    }
    double s = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double t = std::exp(-2.0 * double(j) * double(j) * k * k);
        s += (j % 2 ? t : -t);
        if (t < 1e-18) break;
    }
    return 2.0 * s;
}

double kolmogorov_quantile(double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("KS level must lie in (0,1)");
    double lo = 0.1, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_survival(mid) > level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double ks_critical(std::size_t n, double level) {
    const double sn = std::sqrt(static_cast<double>(n));
    return kolmogorov_quantile(level) / (sn + 0.12 + 0.11 / sn);
}

double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
    if (x.empty()) throw DomainError("ks_statistic: no samples");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double chi_square_quantile(double p, double df) {
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(df), p);
}

double chi_square_sf(double x, double df) {
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(df), x));
}

Reference Reference::exponential(double rate) {
    if (!(rate > 0.0)) throw DomainError("exponential reference needs a positive rate");
    Reference r;
    r.kind = Kind::Exponential;
    r.rate = rate;
    return r;
}

Reference Reference::table(std::function<double(std::int64_t)> pmf, std::int64_t max_bucket) {
    if (max_bucket < 1) throw DomainError("pmf reference needs max_bucket >= 1");
    Reference r;
    r.kind = Kind::Pmf;
    r.pmf = std::move(pmf);
    r.max_bucket = max_bucket;
    return r;
}

StatsReport chi_square_counts(const std::string& name, const std::vector<std::uint64_t>& counts, const Reference& ref,
                              double level) {
    if (ref.kind != Reference::Kind::Pmf) throw DomainError("chi_square_counts needs a pmf reference");
    const auto B = static_cast<std::size_t>(ref.max_bucket);
    if (counts.size() != B + 1) throw DomainError("chi_square_counts: expected max_bucket + 1 counts");
    std::uint64_t N = 0;
    for (auto c : counts) N += c;
    if (N == 0) throw DomainError("chi_square_counts: no samples");
    StatsReport r;
    r.test_name = name;
    r.n_samples = N;
    double head = 0.0, stat = 0.0;
    Json buckets = Json::array();
    for (std::size_t b = 0; b <= B; ++b) {
        double p;
        if (b < B) {
            p = ref.pmf(static_cast<std::int64_t>(b + 1));
            head += p;
        } else {
            p = std::max(0.0, 1.0 - head);
        }
        const double e = static_cast<double>(N) * p;
        const double o = static_cast<double>(counts[b]);
        if (e > 0.0) stat += (o - e) * (o - e) / e;
        buckets.push_back({{"bucket", b < B ? std::to_string(b + 1) : ">" + std::to_string(B)},
                           {"observed", counts[b]},
                           {"expected", e}});
    }
    const double df = static_cast<double>(B);
    r.statistic = stat;
    r.threshold = chi_square_quantile(1.0 - level, df);
    r.params["method"] = "pearson-chi-square";
    r.params["level"] = level;
    r.params["df"] = df;
    r.params["p_value"] = chi_square_sf(stat, df);
    r.params["buckets"] = buckets;
    finalize(r);
    return r;
}

StatsReport distribution_tests(const std::string& name, const std::vector<double>& samples,
                               const std::vector<std::uint8_t>& censored, const Reference& ref, double level) {
    if (!censored.empty() && censored.size() != samples.size())
        throw DomainError("distribution_tests: censor mask size mismatch");
    std::vector<double> kept;
    kept.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (censored.empty() || !censored[i]) kept.push_back(samples[i]);
    if (kept.empty()) throw DomainError("distribution_tests: all samples censored");
    if (kept.size() < 30) throw DomainError("distribution_tests: fewer than 30 uncensored samples");
    const double cf = samples.empty() ? 0.0 : 1.0 - static_cast<double>(kept.size()) / static_cast<double>(samples.size());
    StatsReport r;
    if (ref.kind == Reference::Kind::Exponential) {
        const double rate = ref.rate;
        r.test_name = name;
        r.n_samples = kept.size();
        r.statistic = ks_statistic(kept, [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); });
        r.threshold = ks_critical(kept.size(), level);
        r.params["method"] = "kolmogorov-smirnov";
        r.params["reference"] = "exponential";
        r.params["rate"] = rate;
        r.params["level"] = level;
    } else {
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(ref.max_bucket) + 1, 0);
        for (double v : kept) {
            const auto n = static_cast<std::int64_t>(std::llround(v));
            if (n < 1) throw DomainError("distribution_tests: pmf samples must be integers >= 1");
            ++counts[static_cast<std::size_t>(std::min(n, ref.max_bucket + 1) - 1)];
        }
        r = chi_square_counts(name, counts, ref, level);
    }
    r.censored_fraction = cf;
    finalize(r);
    return r;
}

MeanSe mean_se(const std::vector<double>& v) {
    MeanSe m;
    m.n = v.size();
    if (v.empty()) return m;
    double s = 0.0;
    for (double x : v) s += x;
    m.mean = s / static_cast<double>(v.size());
    if (v.size() > 1) {
        double q = 0.0;
        for (double x : v) q += (x - m.mean) * (x - m.mean);
        m.se = std::sqrt(q / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    }
    return m;
}

StatsReport estimate_densities(const DensityConfig& cfg) {
    if (!(cfg.alpha_lo > 0.0 && cfg.alpha_hi < 1.0 && cfg.alpha_lo <= cfg.alpha_hi))
        throw DomainError("estimate_densities: need 0 < alpha_lo <= alpha_hi < 1");
    if (cfg.replicas < 1 || cfg.window_sizes.empty()) throw DomainError("estimate_densities: need replicas and window sizes");
    const bool degenerate = cfg.alpha_lo == cfg.alpha_hi;
    const Direction zeta(cfg.alpha_lo), eta(cfg.alpha_hi);
    const std::int64_t n = cfg.horizon;
    const std::int64_t kmin = target_index(zeta, degenerate ? Sign::None : Sign::Minus, n);
    const std::int64_t kmax = target_index(eta, degenerate ? Sign::None : Sign::Plus, n);
    const std::int64_t nmax = *std::max_element(cfg.window_sizes.begin(), cfg.window_sizes.end());
    if (kmin <= nmax || n - kmax <= nmax || kmin < 1 || kmax > n - 1)
        throw DomainError("estimate_densities: degenerate interval with zero grid coverage at this horizon");

    struct Rep {
        std::vector<double> k1, k2, k12;
        double cif_in = 0.0;
    };
    const auto reps = run_replicas<Rep>(cfg.replicas, [&](std::size_t r) {
        const Environment env(derive_seed(cfg.seed, "density", r));
        const auto win = LatticeWindow::square(0, nmax);
        const auto lo = field_to_target(win, Site{kmin, n - kmin}, env, Site{}, Exec::Serial);
        const auto hi = field_to_target(win, Site{kmax, n - kmax}, env, Site{}, Exec::Serial);
        const auto g = instability_graph(lo, hi);
        Rep out;
        for (auto m : cfg.window_sizes) {
            const auto c = count_edges(g, LatticeWindow::square(0, m));
            const double s = static_cast<double>(c.sites);
            out.k1.push_back(static_cast<double>(c.south) / s);
            out.k2.push_back(static_cast<double>(c.west) / s);
            out.k12.push_back(static_cast<double>(c.both) / s);
        }
        // Sign of B(e1, e2) at the two bracket targets, from passage times.
        const auto prof = level_profile(env, Site{}, e1, e2, n, kmin, kmax, Exec::Serial);
        const double b_lo = prof.from_a.front() - prof.from_b.front();
        const double b_hi = prof.from_a.back() - prof.from_b.back();
        out.cif_in = (b_lo <= 0.0 && b_hi >= 0.0) ? 1.0 : 0.0;
        return out;
    });

    StatsReport rep;
    rep.test_name = "estimate_densities";
    rep.seeds = {cfg.seed};
    rep.n_samples = cfg.replicas;
    rep.params["alpha_lo"] = cfg.alpha_lo;
    rep.params["alpha_hi"] = cfg.alpha_hi;
    rep.params["horizon"] = n;
    rep.params["target_lo"] = kmin;
    rep.params["target_hi"] = kmax;
    Json per = Json::array();
    double se12 = 0.0, k12_last = 0.0;
    for (std::size_t wi = 0; wi < cfg.window_sizes.size(); ++wi) {
        std::vector<double> a, b, c;
        for (const auto& r : reps) {
            a.push_back(r.k1[wi]);
            b.push_back(r.k2[wi]);
            c.push_back(r.k12[wi]);
        }
        const auto m1 = mean_se(a), m2 = mean_se(b), m12 = mean_se(c);
        per.push_back({{"n", cfg.window_sizes[wi]},
                       {"kappa1", m1.mean},
                       {"kappa2", m2.mean},
                       {"kappa12", m12.mean},
                       {"kappa12_se", m12.se}});
        if (cfg.window_sizes[wi] == nmax) {
            se12 = m12.se;
            k12_last = m12.mean;
        }
    }
    std::vector<double> cif;
    for (const auto& r : reps) cif.push_back(r.cif_in);
    const auto mc = mean_se(cif);
    rep.params["densities"] = per;
    rep.params["cif_in_interval"] = mc.mean;
    const double sigma = std::sqrt(mc.se * mc.se + se12 * se12 + mc.mean * (1.0 - mc.mean) / double(cfg.replicas));
    rep.statistic = sigma > 0.0 ? std::abs(k12_last - mc.mean) / sigma : std::abs(k12_last - mc.mean);
    rep.threshold = 3.0;
    rep.note = "statistic = |kappa12 - P(cif in interval)| / sigma on the largest box";
    finalize(rep);
    return rep;
}

}  // namespace lpp
