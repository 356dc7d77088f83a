#include "kzero/sampling.hpp"
#include "kzero/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace kzero::sampling {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420970;

std::uint64_t splitmix64(std::uint64_t& x)
{
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void require_n(std::size_t n)
{
    if (n == 0) throw std::domain_error("sample: n must be >= 1");
}

} // namespace

Rng::Rng(std::uint64_t seed)
{
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64()
{
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::next_uniform()
{
    // strictly inside (0,1) so erfinv and log stay finite
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::next_normal()
{
    return kSqrt2 * specfun::erfinv(2.0 * next_uniform() - 1.0);
}

double Rng::next_exponential() { return -std::log(next_uniform()); }

double Rng::next_gamma(double shape)
{
    if (!(shape > 0.0)) throw std::domain_error("next_gamma: shape must be > 0");
    if (shape < 1.0) {
        const double g = next_gamma(shape + 1.0);
        return g * std::pow(next_uniform(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::string representation_id(Representation r)
{
    switch (r) {
        case Representation::canonical: return "canonical";
        case Representation::product: return "product";
        case Representation::chi_mixture: return "chi_mixture";
        case Representation::exp_difference: return "exp_difference";
        case Representation::exp_mixture: return "exp_mixture";
        case Representation::direct_sum: return "direct_sum";
        case Representation::gamma_difference: return "gamma_difference";
    }
    return "unknown";
}

SampleBatch sample_bessel(double sigma, std::size_t n, std::uint64_t seed,
                          Representation rep)
{
    require_n(n);
    if (!(sigma > 0.0)) throw std::domain_error("sample_bessel: sigma must be > 0");
    if (rep == Representation::canonical) rep = Representation::product;
    if (rep != Representation::product && rep != Representation::chi_mixture)
        throw std::domain_error("sample_bessel: representation must be product or chi_mixture");
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& y : v) {
        const double z1 = rng.next_normal();
        const double z2 = rng.next_normal();
        y = rep == Representation::product ? sigma * z1 * z2
                                           : sigma * std::abs(z1) * z2;
    }
    return {std::move(v), seed, kGeneratorId, dist::BesselK{sigma}, rep};
}

SampleBatch sample_laplace(double s, std::size_t n, std::uint64_t seed,
                           Representation rep)
{
    require_n(n);
    if (!(s > 0.0)) throw std::domain_error("sample_laplace: s must be > 0");
    if (rep == Representation::canonical) rep = Representation::exp_difference;
    if (rep != Representation::exp_difference && rep != Representation::exp_mixture)
        throw std::domain_error(
            "sample_laplace: representation must be exp_difference or exp_mixture");
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& y : v) {
        if (rep == Representation::exp_difference) {
            y = s * (rng.next_exponential() - rng.next_exponential());
        } else {
            const double w = rng.next_exponential();
            y = s * std::sqrt(2.0 * w) * rng.next_normal();
        }
    }
    return {std::move(v), seed, kGeneratorId,
            dist::ClassicalLaplace{0.0, s, std::nullopt}, rep};
}

SampleBatch sample_gal(double sigma, double tau, std::size_t n, std::uint64_t seed)
{
    require_n(n);
    if (!(sigma > 0.0) || !(tau > 0.0))
        throw std::domain_error("sample_gal: sigma and tau must be > 0");
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& y : v) {
        const double g = rng.next_gamma(tau);
        y = sigma * std::sqrt(g) * rng.next_normal();
    }
    return {std::move(v), seed, kGeneratorId, dist::SymmetricGAL{sigma, tau},
            Representation::canonical};
}

SampleBatch sample_laplace_sum(int n_terms, double s, std::size_t n,
                               std::uint64_t seed, Representation rep)
{
    require_n(n);
    if (n_terms < 1) throw std::domain_error("sample_laplace_sum: n_terms must be >= 1");
    if (!(s > 0.0)) throw std::domain_error("sample_laplace_sum: s must be > 0");
    if (rep == Representation::canonical) rep = Representation::direct_sum;
    if (rep != Representation::direct_sum && rep != Representation::gamma_difference)
        throw std::domain_error(
            "sample_laplace_sum: representation must be direct_sum or gamma_difference");
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& y : v) {
        if (rep == Representation::direct_sum) {
            double acc = 0.0;
            for (int k = 0; k < n_terms; ++k)
                acc += s * (rng.next_exponential() - rng.next_exponential());
            y = acc;
        } else {
            y = s * (rng.next_gamma(n_terms) - rng.next_gamma(n_terms));
        }
    }
    return {std::move(v), seed, kGeneratorId, dist::LaplaceMean{n_terms, s}, rep};
}

SampleBatch sample_martinmaas(double s, std::size_t n, std::uint64_t seed)
{
    require_n(n);
    if (!(s > 0.0)) throw std::domain_error("sample_martinmaas: s must be > 0");
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& y : v) {
        const double mag = s * rng.next_gamma(0.5);   // |Y| ~ gamma(1/2, scale s)
        y = rng.next_uniform() < 0.5 ? -mag : mag;
    }
    return {std::move(v), seed, kGeneratorId, dist::MartinMaas{s},
            Representation::canonical};
}

SampleBatch sample_normal(double sigma, std::size_t n, std::uint64_t seed)
{
    require_n(n);
    if (!(sigma > 0.0)) throw std::domain_error("sample_normal: sigma must be > 0");
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& y : v) y = sigma * rng.next_normal();
    return {std::move(v), seed, kGeneratorId, dist::ZeroMeanNormal{sigma},
            Representation::canonical};
}

SampleBatch sample(const dist::DistributionSpec& d, std::size_t n,
                   std::uint64_t seed, Representation rep)
{
    return std::visit(
        [&](const auto& v) -> SampleBatch {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, dist::BesselK>) {
                return sample_bessel(v.sigma, n, seed, rep);
            } else if constexpr (std::is_same_v<T, dist::ClassicalLaplace>) {
                if (v.theta != 0.0)
                    throw std::domain_error("sample: laplace theta must be 0");
                return sample_laplace(v.s, n, seed, rep);
            } else if constexpr (std::is_same_v<T, dist::MartinMaas>) {
                return sample_martinmaas(v.s, n, seed);
            } else if constexpr (std::is_same_v<T, dist::SymmetricGAL>) {
                return sample_gal(v.sigma, v.tau, n, seed);
            } else if constexpr (std::is_same_v<T, dist::LaplaceMean>) {
                auto batch = sample_laplace_sum(v.n, v.s, n, seed, rep);
                for (auto& y : batch.values) y /= v.n;   // sum -> mean
                return batch;
            } else {
                return sample_normal(v.sigma, n, seed);
            }
        },
        d);
}

double ks_statistic_one_sample(std::vector<double> values,
                               const std::function<double(double)>& cdf)
{
    if (values.empty())
        throw std::domain_error("ks_statistic_one_sample: empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double F = cdf(values[i]);
        d = std::max(d, (i + 1) / n - F);
        d = std::max(d, F - i / n);
    }
    return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw std::domain_error("ks_statistic_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_critical(double alpha, std::size_t n)
{
    // c(alpha) = sqrt(-ln(alpha/2)/2); c(0.01) = 1.6276
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("ks_critical: alpha must be in (0,1)");
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m)
{
    const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
    return c * std::sqrt((n + m) / (static_cast<double>(n) * m));
}

KsReport verify_bessel_sum_is_laplace(double sigma, std::size_t n,
                                      std::uint64_t seed)
{
    if (n < 10000)
        throw std::domain_error("verify_bessel_sum_is_laplace: n must be >= 1e4");
    auto b1 = sample_bessel(sigma, n, seed);
    auto b2 = sample_bessel(sigma, n, seed + 1);
    std::vector<double> sums(n);
    for (std::size_t i = 0; i < n; ++i) sums[i] = b1.values[i] + b2.values[i];
    // The sum's chf is (1 + sigma^2 t^2)^{-1}, i.e. ClassicalLaplace(0, sigma).
    const dist::DistributionSpec target =
        dist::ClassicalLaplace{0.0, sigma, std::nullopt};
    const double stat = ks_statistic_one_sample(
        std::move(sums), [&](double x) { return dist::cdf(target, x); });
    const double crit = ks_critical(0.01, n);
    return {stat, crit, stat < crit, n};
}

std::string batch_to_csv(const SampleBatch& batch)
{
    std::ostringstream out;
    out << "# generator_id=" << batch.generator_id << "\n";
    out << "# seed=" << batch.seed << "\n";
    out << "# dist=" << dist::to_string(batch.dist) << "\n";
    out << "# representation_id=" << representation_id(batch.representation) << "\n";
    out << "value\n";
    out.precision(17);
    out << std::scientific;
    for (double v : batch.values) out << v << "\n";
    return out.str();
}

} // namespace kzero::sampling
