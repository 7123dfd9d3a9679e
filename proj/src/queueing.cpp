#include "lpp/queueing.hpp"

#include <cmath>

#include "lpp/error.hpp"
#include "lpp/rng.hpp"

namespace lpp {

QueueOutput queue_operator(const std::vector<double>& I, const std::vector<double>& Y, double terminal_J) {
    if (I.size() != Y.size()) throw DomainError("queue_operator: length mismatch");
    if (!(terminal_J > 0.0)) throw DomainError("queue_operator: terminal J must be positive");
    for (std::size_t k = 0; k < I.size(); ++k)
        if (!(I[k] > 0.0 && Y[k] > 0.0)) throw DomainError("queue_operator: entries must be positive");
    QueueOutput q;
    q.Itilde.resize(I.size());
    q.J.resize(I.size());
    double next = terminal_J;
    for (std::size_t k = I.size(); k-- > 0;) {
        const double d = next - I[k];
        q.J[k] = Y[k] + (d > 0.0 ? d : 0.0);
        q.Itilde[k] = Y[k] + (d < 0.0 ? -d : 0.0);
        next = q.J[k];
    }
    return q;
}

std::vector<std::int64_t> QueueLine::jump_indices() const {
    std::vector<std::int64_t> out;
    for (std::size_t k = 0; k < Itilde.size(); ++k)
        if (Itilde[k] > Y[k]) out.push_back(static_cast<std::int64_t>(k));
    return out;
}

QueueLine coupled_line_busemann(double alpha, double beta, std::int64_t N, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < beta && beta < 1.0)) throw DomainError("coupled line needs 0 < alpha < beta < 1");
    if (N < 1) throw DomainError("coupled line needs N >= 1");
    const std::uint64_t kI = derive_seed(seed, "line-I");
    const std::uint64_t kY = derive_seed(seed, "line-Y");
    const std::uint64_t kJ = derive_seed(seed, "line-J");
    QueueLine line;
    line.alpha = alpha;
    line.beta = beta;
    line.seed = seed;
    auto burn = static_cast<std::int64_t>(std::ceil(50.0 / (1.0 / alpha - 1.0 / beta)));
    // Draws are keyed by index, so enlarging the burn-in leaves existing draws intact.
    for (int attempt = 0; attempt < 24; ++attempt, burn *= 2) {
        const std::int64_t total = N + burn;
        std::vector<double> I(static_cast<std::size_t>(total)), Y(static_cast<std::size_t>(total));
        for (std::int64_t k = 0; k < total; ++k) {
            I[static_cast<std::size_t>(k)] = exp_from_bits(site_hash(kI, k, 0), alpha);
            Y[static_cast<std::size_t>(k)] = exp_from_bits(site_hash(kY, k, 0), beta);
        }
        const double jT = exp_from_bits(site_hash(kJ, total, 0), beta - alpha);
        auto q = queue_operator(I, Y, jT);
        bool regen = false;
        for (std::int64_t k = N; k < total && !regen; ++k) {
            const double jn = k + 1 < total ? q.J[static_cast<std::size_t>(k + 1)] : jT;
            regen = jn <= I[static_cast<std::size_t>(k)];
        }
        line.burn_in = burn;
        line.terminal_J = jT;
        line.regenerated = regen;
        if (regen || attempt == 23) {
            const auto n = static_cast<std::size_t>(N);
            line.I.assign(I.begin(), I.begin() + static_cast<std::ptrdiff_t>(n));
            line.Y.assign(Y.begin(), Y.begin() + static_cast<std::ptrdiff_t>(n));
            line.Itilde.assign(q.Itilde.begin(), q.Itilde.begin() + static_cast<std::ptrdiff_t>(n));
            line.J.assign(q.J.begin(), q.J.begin() + static_cast<std::ptrdiff_t>(n));
            break;
        }
    }
    return line;
}

namespace {

constexpr std::uint64_t kCatalan[] = {1ULL,
                                      1ULL,
                                      2ULL,
                                      5ULL,
                                      14ULL,
                                      42ULL,
                                      132ULL,
                                      429ULL,
                                      1430ULL,
                                      4862ULL,
                                      16796ULL,
                                      58786ULL,
                                      208012ULL,
                                      742900ULL,
                                      2674440ULL,
                                      9694845ULL,
                                      35357670ULL,
                                      129644790ULL,
                                      477638700ULL,
                                      1767263190ULL,
                                      6564120420ULL,
                                      24466267020ULL,
                                      91482563640ULL,
                                      343059613650ULL,
                                      1289904147324ULL,
                                      4861946401452ULL,
                                      18367353072152ULL,
                                      69533550916004ULL,
                                      263747951750360ULL,
                                      1002242216651368ULL,
                                      3814986502092304ULL,
                                      14544636039226909ULL,
                                      55534064877048198ULL,
                                      212336130412243110ULL,
                                      812944042149730764ULL,
                                      3116285494907301262ULL};
constexpr std::int64_t kCatalanMax = 35;

double log_catalan(std::int64_t m) {
    const double md = static_cast<double>(m);
    return std::lgamma(2.0 * md + 1.0) - std::lgamma(md + 1.0) - std::lgamma(md + 2.0);
}

// C_{n-1} p^{n-1} q^n with p + q = 1.
double catalan_weight(std::int64_t n, double p, double q) {
    if (n - 1 <= kCatalanMax)
        return static_cast<double>(kCatalan[n - 1]) * (std::pow(p, static_cast<double>(n - 1)) * std::pow(q, static_cast<double>(n)));
    return std::exp(log_catalan(n - 1) + static_cast<double>(n - 1) * std::log(p) + static_cast<double>(n) * std::log(q));
}

}  // namespace

double catalan_number(std::int64_t m) {
    if (m < 0) throw DomainError("catalan_number: m >= 0 required");
    if (m <= kCatalanMax) return static_cast<double>(kCatalan[m]);
    return std::exp(log_catalan(m));
}

double catalan_pmf(std::int64_t n, double alpha, double beta) {
    if (n < 1) throw DomainError("catalan_pmf: n >= 1 required");
    if (!(alpha > 0.0 && beta >= alpha)) throw DomainError("catalan_pmf: need 0 < alpha <= beta");
    const double s = alpha + beta;
    return catalan_weight(n, alpha / s, beta / s);
}

double palm_pmf(std::int64_t n) {
    if (n < 1) throw DomainError("palm_pmf: n >= 1 required");
    return catalan_weight(n, 0.5, 0.5);
}

std::vector<std::uint8_t> ssrw_zero_set(std::uint64_t seed, std::int64_t length) {
    if (length < 0) throw DomainError("ssrw_zero_set: negative length");
    Stream s(derive_seed(seed, "ssrw"));
    std::vector<std::uint8_t> rho(static_cast<std::size_t>(length));
    std::int64_t pos = 0;
    for (std::int64_t n = 0; n < length; ++n) {
        pos += s.coin() ? 1 : -1;
        pos += s.coin() ? 1 : -1;
        rho[static_cast<std::size_t>(n)] = pos == 0;
    }
    return rho;
}

}  // namespace lpp
