#include "kzero/checks.hpp"

#include "kzero/dist.hpp"
#include "kzero/kernels.hpp"
#include "kzero/oracle.hpp"
#include "kzero/sampling.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <variant>

namespace kzero::checks {

namespace {

using dist::DistributionSpec;

CheckResult bounded(std::string name, double observed, double bound,
                    std::string detail = {})
{
    // NaN must fail, so test with <= rather than its negation
    return {std::move(name), observed <= bound, observed, bound, std::move(detail)};
}

double worst_of(double acc, double candidate)
{
    if (std::isnan(candidate)) return std::numeric_limits<double>::quiet_NaN();
    return std::max(acc, candidate);
}

CheckResult expect_true(std::string name, bool ok, double observed, double bound,
                        std::string detail = {})
{
    return {std::move(name), ok, observed, bound, std::move(detail)};
}

bool has_closed_pdf(const DistributionSpec& d)
{
    if (auto* g = std::get_if<dist::SymmetricGAL>(&d)) {
        const double t2 = 2.0 * g->tau;
        return std::abs(t2 - std::round(t2)) < 1e-9;
    }
    return true;
}

std::vector<double> family_grid(const DistributionSpec& d, std::size_t n)
{
    const double span = 5.0 * std::sqrt(dist::moments(d).variance);
    std::vector<double> g;
    g.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double y = -span + 2.0 * span * i / (n - 1);
        if (std::abs(y) < 0.05 * span) y += 0.06 * span;   // keep clear of y = 0
        g.push_back(y);
    }
    return g;
}

// Five-point central difference of the closed cdf; fallback pdf oracle for
// the families that are not gamma-variance mixtures.
double pdf_by_cdf_derivative(const DistributionSpec& d, double y)
{
    const double h = 1e-3 * std::max(0.5, std::abs(y));
    auto F = [&](double x) { return dist::cdf(d, x); };
    return (-F(y + 2 * h) + 8 * F(y + h) - 8 * F(y - h) + F(y - 2 * h)) / (12 * h);
}

double oracle_pdf(const DistributionSpec& d, double y,
                  const oracle::QuadratureConfig& cfg)
{
    if (std::holds_alternative<dist::MartinMaas>(d) ||
        std::holds_alternative<dist::ZeroMeanNormal>(d))
        return pdf_by_cdf_derivative(d, y);
    if (auto* b = std::get_if<dist::BesselK>(&d))
        return oracle::compound_density(b->sigma, y, cfg);
    return oracle::mixture_pdf(d, y, cfg);
}

double oracle_pdf_tolerance(const DistributionSpec& d)
{
    if (std::holds_alternative<dist::MartinMaas>(d) ||
        std::holds_alternative<dist::ZeroMeanNormal>(d))
        return 1e-6;   // finite-difference oracle, not quadrature
    return 1e-8;
}

void parity_for(std::vector<CheckResult>& out, const std::string& tag,
                const DistributionSpec& d)
{
    oracle::QuadratureConfig cfg;
    cfg.singularity_points = {0.0};
    const auto grid = family_grid(d, 41);

    if (has_closed_pdf(d)) {
        double worst = 0.0;
        for (double y : grid)
            worst = worst_of(worst, std::abs(dist::pdf(d, y) - oracle_pdf(d, y, cfg)));
        out.push_back(bounded("parity/" + tag + "/pdf", worst,
                              oracle_pdf_tolerance(d), "max abs diff on 41-pt grid"));

        auto pdf_fn = [&](double x) { return dist::pdf(d, x); };
        double worst_cdf = 0.0;
        for (double y : grid)
            worst_cdf = worst_of(
                worst_cdf,
                std::abs(dist::cdf(d, y) - oracle::cdf_by_quadrature(pdf_fn, y, cfg)));
        out.push_back(bounded("parity/" + tag + "/cdf", worst_cdf, 1e-8,
                              "max abs diff on 41-pt grid"));

        const double m0 = oracle::moment_by_quadrature(pdf_fn, 0, cfg);
        const double m1 = oracle::moment_by_quadrature(pdf_fn, 1, cfg);
        const double m2 = oracle::moment_by_quadrature(pdf_fn, 2, cfg);
        const auto mom = dist::moments(d);
        out.push_back(bounded("parity/" + tag + "/moment0", std::abs(m0 - 1.0), 1e-8));
        out.push_back(
            bounded("parity/" + tag + "/moment1", std::abs(m1 - mom.mean), 1e-8));
        out.push_back(bounded("parity/" + tag + "/moment2",
                              std::abs(m2 - mom.variance) / mom.variance, 1e-7,
                              "relative error vs closed-form variance"));
    } else {
        // no closed pdf: check the mixture oracle's own normalization instead
        auto pdf_fn = [&](double x) { return oracle::mixture_pdf(d, x, cfg); };
        const double m0 = oracle::moment_by_quadrature(pdf_fn, 0, cfg);
        out.push_back(bounded("parity/" + tag + "/oracle-moment0",
                              std::abs(m0 - 1.0), 1e-7));
    }
}

CheckResult two_sample_ks(const std::string& name, std::vector<double> a,
                          std::vector<double> b)
{
    const std::size_t n = a.size(), m = b.size();
    const double stat = sampling::ks_statistic_two_sample(std::move(a), std::move(b));
    const double crit = sampling::ks_critical_two_sample(0.01, n, m);
    return bounded(name, stat, crit, "two-sample KS at 1%");
}

CheckResult one_sample_ks(const std::string& name, std::vector<double> values,
                          const DistributionSpec& target)
{
    const std::size_t n = values.size();
    const double stat = sampling::ks_statistic_one_sample(
        std::move(values), [&](double x) { return dist::cdf(target, x); });
    const double crit = sampling::ks_critical(0.01, n);
    return bounded(name, stat, crit, "one-sample KS at 1%");
}

CheckResult moment_consistency(const std::string& name, const DistributionSpec& d,
                               std::uint64_t seed)
{
    constexpr std::size_t n = 1000000;
    const auto batch = sampling::sample(d, n, seed);
    const auto mv = kernels::mean_variance(batch.values.data(), n);
    const auto mom = dist::moments(d);
    // 4 standard errors; se(var) uses the normal-theory sqrt(2/n) inflated by
    // the family's excess kurtosis upper bound (conservative factor 3).
    const double se_mean = std::sqrt(mom.variance / n);
    const double se_var = 3.0 * mom.variance * std::sqrt(2.0 / n);
    const bool ok = std::abs(mv.mean - mom.mean) < 4.0 * se_mean &&
                    std::abs(mv.variance - mom.variance) < 4.0 * se_var;
    return expect_true(name, ok, mv.variance, mom.variance,
                       "sample mean/variance vs closed form, 4 s.e.");
}

} // namespace

std::vector<CheckResult> parity_suite()
{
    std::vector<CheckResult> out;
    parity_for(out, "bessel", dist::BesselK{1.3});
    parity_for(out, "laplace", dist::ClassicalLaplace{0.0, 0.8, std::nullopt});
    parity_for(out, "martinmaas", dist::MartinMaas{1.2});
    parity_for(out, "gal", dist::SymmetricGAL{1.1, 1.5});
    parity_for(out, "gal-nonclosed", dist::SymmetricGAL{1.0, 0.8});
    parity_for(out, "laplacemean", dist::LaplaceMean{3, 0.9});
    parity_for(out, "normal", dist::ZeroMeanNormal{1.4});
    return out;
}

std::vector<CheckResult> representations_suite(std::uint64_t seed)
{
    constexpr std::size_t kn = 100000;
    std::vector<CheckResult> out;

    out.push_back(two_sample_ks(
        "rep/bessel/product-vs-chi_mixture",
        sampling::sample_bessel(1.0, kn, seed, sampling::Representation::product).values,
        sampling::sample_bessel(1.0, kn, seed + 7,
                                sampling::Representation::chi_mixture)
            .values));

    out.push_back(two_sample_ks(
        "rep/laplace/difference-vs-mixture",
        sampling::sample_laplace(1.0, kn, seed + 11,
                                 sampling::Representation::exp_difference)
            .values,
        sampling::sample_laplace(1.0, kn, seed + 13,
                                 sampling::Representation::exp_mixture)
            .values));

    out.push_back(one_sample_ks(
        "rep/gal/tau-half-is-bessel",
        sampling::sample_gal(std::sqrt(2.0), 0.5, kn, seed + 17).values,
        dist::BesselK{1.0}));

    out.push_back(one_sample_ks(
        "rep/gal/tau-one-is-laplace",
        sampling::sample_gal(std::sqrt(2.0) * 0.7, 1.0, kn, seed + 19).values,
        dist::ClassicalLaplace{0.0, 0.7, std::nullopt}));

    out.push_back(two_sample_ks(
        "rep/laplace-sum/direct-vs-gamma",
        sampling::sample_laplace_sum(3, 1.0, kn, seed + 23,
                                     sampling::Representation::direct_sum)
            .values,
        sampling::sample_laplace_sum(3, 1.0, kn, seed + 29,
                                     sampling::Representation::gamma_difference)
            .values));

    {
        const auto a = sampling::sample_laplace_sum(
            1, 1.0, 1000, seed + 31, sampling::Representation::direct_sum);
        const auto b = sampling::sample_laplace(1.0, 1000, seed + 31);
        out.push_back(expect_true("rep/laplace-sum/one-term-reduces",
                                  a.values == b.values, 0.0, 0.0,
                                  "bitwise equality under shared seed"));
    }

    for (double sigma : {1.0, 2.0}) {
        const auto rep =
            sampling::verify_bessel_sum_is_laplace(sigma, kn, seed + 37);
        std::ostringstream name;
        name << "rep/bessel-sum/sigma=" << sigma;
        out.push_back(bounded(name.str(), rep.statistic, rep.critical,
                              "sum of two draws vs Laplace scale sigma"));
    }
    {
        // negative control: the wrong scale must be rejected
        auto b1 = sampling::sample_bessel(1.0, kn, seed + 41);
        auto b2 = sampling::sample_bessel(1.0, kn, seed + 43);
        std::vector<double> sums(kn);
        for (std::size_t i = 0; i < kn; ++i) sums[i] = b1.values[i] + b2.values[i];
        const DistributionSpec wrong =
            dist::ClassicalLaplace{0.0, 1.0 / std::sqrt(2.0), std::nullopt};
        const double stat = sampling::ks_statistic_one_sample(
            std::move(sums), [&](double x) { return dist::cdf(wrong, x); });
        const double crit = sampling::ks_critical(0.01, kn);
        out.push_back(expect_true("rep/bessel-sum/negative-control", stat > crit,
                                  stat, crit,
                                  "wrong-scale Laplace must fail the KS test"));
    }

    // divisibility: sqrt(U) Z and sqrt(a) sqrt(U/a) Z agree in law, U = sigma^2 S1
    for (double a : {0.5, 2.0, 10.0}) {
        sampling::Rng rng(seed + 47);
        std::vector<double> lhs(kn), rhs(kn);
        for (auto& y : lhs) {
            const double u = rng.next_normal();
            y = std::abs(u) * rng.next_normal();
        }
        sampling::Rng rng2(seed + 53);
        for (auto& y : rhs) {
            const double u = rng2.next_normal() * rng2.next_normal();
            y = std::sqrt(a) * std::sqrt(u * u / a) *
                (rng2.next_uniform() < 0.5 ? -1.0 : 1.0);
        }
        std::ostringstream name;
        name << "rep/divisibility/a=" << a;
        out.push_back(two_sample_ks(name.str(), std::move(lhs), std::move(rhs)));
    }

    out.push_back(moment_consistency("rep/moments/bessel", dist::BesselK{1.0},
                                     seed + 59));
    out.push_back(moment_consistency("rep/moments/laplace",
                                     dist::ClassicalLaplace{0.0, 1.0, std::nullopt},
                                     seed + 61));
    out.push_back(moment_consistency("rep/moments/gal",
                                     dist::SymmetricGAL{1.0, 2.0}, seed + 67));
    out.push_back(moment_consistency("rep/moments/martinmaas",
                                     dist::MartinMaas{1.0}, seed + 71));
    out.push_back(moment_consistency("rep/moments/laplacemean",
                                     dist::LaplaceMean{4, 1.0}, seed + 73));
    out.push_back(moment_consistency("rep/moments/normal",
                                     dist::ZeroMeanNormal{1.0}, seed + 79));

    return out;
}

bool all_pass(const std::vector<CheckResult>& results)
{
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace kzero::checks
