#include "doctest.h"

#include "kzero/dist.hpp"
#include "kzero/kernels.hpp"
#include "kzero/sampling.hpp"

#include <cmath>
#include <functional>

namespace kd = kzero::dist;
namespace ks = kzero::sampling;

TEST_CASE("rng determinism and uniform range")
{
    ks::Rng a(42), b(42), c(43);
    bool identical = true, differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        identical = identical && x == b.next_u64();
        differs = differs || x != c.next_u64();
    }
    CHECK(identical);
    CHECK(differs);
    ks::Rng r(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("batches are bit-reproducible")
{
    const auto a = ks::sample_bessel(1.0, 5000, 123);
    const auto b = ks::sample_bessel(1.0, 5000, 123);
    CHECK(a.values == b.values);
    const auto c = ks::sample_bessel(1.0, 5000, 124);
    CHECK(a.values != c.values);
    CHECK(a.generator_id == ks::kGeneratorId);
}

TEST_CASE("sampler moments at n=1e6")
{
    constexpr std::size_t n = 1000000;
    SUBCASE("bessel both representations")
    {
        for (auto rep : {ks::Representation::product, ks::Representation::chi_mixture}) {
            const auto batch = ks::sample_bessel(1.0, n, 5, rep);
            const auto mv = kzero::kernels::mean_variance(batch.values.data(), n);
            CHECK(std::abs(mv.mean) < 0.005);
            CHECK(std::abs(mv.variance - 1.0) < 0.01);
        }
    }
    SUBCASE("laplace variance 2 s^2")
    {
        const auto batch = ks::sample_laplace(1.0, n, 6);
        const auto mv = kzero::kernels::mean_variance(batch.values.data(), n);
        CHECK(std::abs(mv.variance - 2.0) < 0.02);
    }
    SUBCASE("gal integer tau variance sigma^2 tau")
    {
        const auto batch = ks::sample_gal(1.0, 3.0, n, 8);
        const auto mv = kzero::kernels::mean_variance(batch.values.data(), n);
        CHECK(std::abs(mv.variance - 3.0) < 3.0 * 3.0 * std::sqrt(2.0 / n) * 4.0);
    }
}

TEST_CASE("gamma sampler matches gamma moments for shape below one")
{
    ks::Rng rng(11);
    constexpr std::size_t n = 400000;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = rng.next_gamma(0.5);
        s1 += g;
        s2 += g * g;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));      // shape
    CHECK(var == doctest::Approx(0.5).epsilon(0.03));       // shape (scale 1)
}

TEST_CASE("one-sample KS statistic basics")
{
    CHECK_THROWS_AS((void)ks::ks_statistic_one_sample({}, [](double) { return 0.5; }),
                    std::domain_error);
    // single point at the median
    const double d =
        ks::ks_statistic_one_sample({0.0}, [](double) { return 0.5; });
    CHECK(d == doctest::Approx(0.5));
    // batch against its own cdf stays under the 1% critical value
    const auto batch = ks::sample_laplace(1.0, 100000, 21);
    const kd::DistributionSpec cl = kd::ClassicalLaplace{0.0, 1.0, std::nullopt};
    const double stat = ks::ks_statistic_one_sample(
        batch.values, [&](double x) { return kd::cdf(cl, x); });
    CHECK(stat < ks::ks_critical(0.01, 100000));
    // shifted cdf must be rejected
    const auto small = ks::sample_laplace(1.0, 10000, 22);
    const double bad = ks::ks_statistic_one_sample(
        small.values, [&](double x) { return kd::cdf(cl, x - 1.0); });
    CHECK(bad > ks::ks_critical(0.01, 10000));
}

TEST_CASE("ks critical value constant")
{
    CHECK(ks::ks_critical(0.01, 1) == doctest::Approx(1.6276).epsilon(1e-3));
    CHECK(ks::ks_critical(0.01, 10000) ==
          doctest::Approx(1.6276 / 100.0).epsilon(1e-3));
}

TEST_CASE("two-sample KS on equal and shifted batches")
{
    const auto a = ks::sample_laplace(1.0, 50000, 31);
    const auto b = ks::sample_laplace(1.0, 50000, 32);
    CHECK(ks::ks_statistic_two_sample(a.values, b.values) <
          ks::ks_critical_two_sample(0.01, 50000, 50000));
    auto shifted = b.values;
    for (auto& x : shifted) x += 0.5;
    CHECK(ks::ks_statistic_two_sample(a.values, shifted) >
          ks::ks_critical_two_sample(0.01, 50000, 50000));
}

TEST_CASE("representation pairs pass two-sample KS across 100 seeds")
{
    // 95-of-100 acceptance accounts for the 1% test level
    static constexpr std::size_t n = 100000;
    struct Pair {
        const char* name;
        std::function<std::vector<double>(std::uint64_t)> a, b;
    };
    const std::vector<Pair> pairs{
        {"bessel product/chi",
         [](std::uint64_t s) {
             return ks::sample_bessel(1.0, n, s, ks::Representation::product).values;
         },
         [](std::uint64_t s) {
             return ks::sample_bessel(1.0, n, s + 1000000,
                                      ks::Representation::chi_mixture)
                 .values;
         }},
        {"laplace diff/mixture",
         [](std::uint64_t s) {
             return ks::sample_laplace(1.0, n, s, ks::Representation::exp_difference)
                 .values;
         },
         [](std::uint64_t s) {
             return ks::sample_laplace(1.0, n, s + 1000000,
                                       ks::Representation::exp_mixture)
                 .values;
         }},
        {"gal tau=1/2 vs bessel",
         [](std::uint64_t s) {
             return ks::sample_gal(std::sqrt(2.0), 0.5, n, s).values;
         },
         [](std::uint64_t s) { return ks::sample_bessel(1.0, n, s + 1000000).values; }},
        {"laplace-sum direct/gamma",
         [](std::uint64_t s) {
             return ks::sample_laplace_sum(3, 1.0, n, s,
                                           ks::Representation::direct_sum)
                 .values;
         },
         [](std::uint64_t s) {
             return ks::sample_laplace_sum(3, 1.0, n, s + 1000000,
                                           ks::Representation::gamma_difference)
                 .values;
         }},
    };
    const double crit = ks::ks_critical_two_sample(0.01, n, n);
    for (const auto& p : pairs) {
        int passes = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed)
            if (ks::ks_statistic_two_sample(p.a(seed), p.b(seed)) < crit) ++passes;
        INFO(p.name);
        CHECK(passes >= 95);
    }
}

TEST_CASE("single-term laplace sum reduces to sample_laplace")
{
    const auto a =
        ks::sample_laplace_sum(1, 1.3, 2000, 77, ks::Representation::direct_sum);
    const auto b = ks::sample_laplace(1.3, 2000, 77);
    CHECK(a.values == b.values);
}

TEST_CASE("bessel sum report")
{
    CHECK_THROWS_AS((void)ks::verify_bessel_sum_is_laplace(1.0, 100, 1),
                    std::domain_error);
    for (double sigma : {1.0, 2.0}) {
        const auto rep = ks::verify_bessel_sum_is_laplace(sigma, 100000, 3);
        CHECK(rep.pass);
    }
}

TEST_CASE("sample() dispatch covers every family")
{
    for (const char* text :
         {"bessel:sigma=1", "laplace:s=1", "martinmaas:s=1", "gal:sigma=1,tau=0.5",
          "laplacemean:n=2,s=1", "normal:sigma=1"}) {
        const auto spec = kd::parse_spec(text);
        const auto batch = ks::sample(spec, 1000, 55);
        CHECK(batch.values.size() == 1000);
    }
    CHECK_THROWS_AS((void)ks::sample_bessel(1.0, 0, 1), std::domain_error);
}

TEST_CASE("csv export carries the metadata header")
{
    const auto batch = ks::sample_bessel(1.0, 3, 9);
    const auto csv = ks::batch_to_csv(batch);
    CHECK(csv.find("# generator_id=") != std::string::npos);
    CHECK(csv.find("# seed=9") != std::string::npos);
    CHECK(csv.find("# dist=bessel:sigma=1") != std::string::npos);
    CHECK(csv.find("# representation_id=product") != std::string::npos);
}
