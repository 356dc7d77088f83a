#include "doctest.h"

#include "kzero/dist.hpp"
#include "kzero/oracle.hpp"
#include "kzero/sampling.hpp"
#include "kzero/specfun.hpp"

#include <cmath>

namespace kd = kzero::dist;
namespace orc = kzero::oracle;
namespace sf = kzero::specfun;

namespace {
constexpr double kPi = 3.14159265358979323846;

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }
} // namespace

TEST_CASE("finite quadrature on elementary integrals")
{
    orc::QuadratureConfig cfg;
    CHECK(orc::integrate([](double x) { return x * x; }, 0.0, 1.0, cfg) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(orc::integrate([](double x) { return std::sin(x); }, 0.0, kPi, cfg) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // integrable endpoint singularity
    CHECK(orc::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg) ==
          doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("infinite-range mappings")
{
    orc::QuadratureConfig cfg;
    CHECK(orc::integrate_half_line([](double x) { return std::exp(-x); }, 0.0, cfg) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(orc::integrate_half_line([](double x) { return std::exp(-x); }, 2.0, cfg) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(orc::integrate_real_line(normal_pdf, cfg) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("interior singularities come from the split list")
{
    orc::QuadratureConfig cfg;
    cfg.singularity_points = {0.0};
    auto f = [](double x) { return std::log(std::abs(x)); };
    CHECK(orc::integrate(f, -1.0, 1.0, cfg) == doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("quadrature failure carries the partial estimate")
{
    orc::QuadratureConfig cfg;
    cfg.max_subdivisions = 3;
    cfg.abs_tol = 1e-15;
    cfg.rel_tol = 1e-15;
    auto nasty = [](double x) { return std::cos(500.0 * x * x); };
    CHECK_THROWS_AS((void)orc::integrate(nasty, 0.0, 10.0, cfg),
                    orc::QuadratureFailure);
}

TEST_CASE("product density of two standard normals is the Bessel pdf")
{
    orc::QuadratureConfig cfg;
    const double got = orc::product_density(normal_pdf, normal_pdf, 0.7, cfg);
    CHECK(std::abs(got - sf::bessel_k0(0.7) / kPi) < 1e-8);
}

TEST_CASE("product density of two uniforms is -ln z")
{
    auto uniform = [](double x) { return x > 0.0 && x < 1.0 ? 1.0 : 0.0; };
    orc::QuadratureConfig cfg;
    cfg.abs_tol = 1e-10;
    const double got = orc::product_density(uniform, uniform, 0.5, cfg);
    CHECK(std::abs(got - (-std::log(0.5))) < 1e-8);
    // far outside the support of the product
    CHECK(std::abs(orc::product_density(uniform, uniform, 3.0, cfg)) < 1e-10);
}

TEST_CASE("compound density equals the K0 closed form")
{
    orc::QuadratureConfig cfg;
    CHECK(std::abs(orc::compound_density(2.0, 1.0, cfg) -
                   sf::bessel_k0(0.5) / (2.0 * kPi)) < 1e-8);
    CHECK(orc::compound_density(1.0, 3.0, cfg) ==
          orc::compound_density(1.0, -3.0, cfg));
    const double far = orc::compound_density(1.0, 20.0, cfg);
    CHECK(far > 0.0);
    CHECK(far < 1e-9);
    CHECK_THROWS_AS((void)orc::compound_density(1.0, 0.0, cfg), kd::SingularityError);
}

TEST_CASE("mixture pdf covers the gamma-variance families")
{
    orc::QuadratureConfig cfg;
    const kd::DistributionSpec cl = kd::ClassicalLaplace{0.0, 0.7, std::nullopt};
    for (double y : {-1.5, 0.2, 2.0})
        CHECK(std::abs(orc::mixture_pdf(cl, y, cfg) - kd::pdf(cl, y)) < 1e-10);
    const kd::DistributionSpec g = kd::SymmetricGAL{1.1, 1.5};
    for (double y : {-2.0, 0.5})
        CHECK(std::abs(orc::mixture_pdf(g, y, cfg) - kd::pdf(g, y)) < 1e-10);
    CHECK_THROWS_AS((void)orc::mixture_pdf(kd::MartinMaas{1.0}, 1.0, cfg),
                    kd::UnsupportedError);
}

TEST_CASE("cdf by quadrature on known cases")
{
    orc::QuadratureConfig cfg;
    cfg.singularity_points = {0.0};
    const kd::DistributionSpec b = kd::BesselK{1.0};
    auto bpdf = [&](double x) { return kd::pdf(b, x); };
    CHECK(orc::cdf_by_quadrature(bpdf, 0.0, cfg) == doctest::Approx(0.5).epsilon(1e-8));
    // Laplace closed form
    auto lpdf = [](double x) { return 0.5 * std::exp(-std::abs(x)); };
    CHECK(std::abs(orc::cdf_by_quadrature(lpdf, 2.0, cfg) -
                   (1.0 - 0.5 * std::exp(-2.0))) < 1e-10);
}

TEST_CASE("moment by quadrature on known cases")
{
    orc::QuadratureConfig cfg;
    cfg.singularity_points = {0.0};
    const kd::DistributionSpec b = kd::BesselK{3.0};
    auto bpdf = [&](double x) { return kd::pdf(b, x); };
    CHECK(std::abs(orc::moment_by_quadrature(bpdf, 0, cfg) - 1.0) < 1e-8);
    CHECK(std::abs(orc::moment_by_quadrature(bpdf, 2, cfg) - 9.0) < 1e-5);
    const kd::DistributionSpec m = kd::MartinMaas{2.0};
    auto mpdf = [&](double x) { return kd::pdf(m, x); };
    // second moment of the Martin-Maas density e^{-|y|/s}/(2 sqrt(pi s |y|)):
    // |Y| ~ gamma(1/2, s), so E[Y^2] = (1/2)(3/2) s^2 = 3 at s = 2
    CHECK(std::abs(orc::moment_by_quadrature(mpdf, 2, cfg) - 3.0) < 1e-5);
    CHECK_THROWS_AS((void)orc::moment_by_quadrature(mpdf, -1, cfg),
                    std::domain_error);
}

TEST_CASE("halving tolerances moves results by less than the tolerance")
{
    orc::QuadratureConfig loose;
    loose.rel_tol = 1e-8;
    loose.abs_tol = 1e-10;
    orc::QuadratureConfig tight;
    tight.rel_tol = 5e-9;
    tight.abs_tol = 5e-11;
    const double a = orc::compound_density(1.3, 0.9, loose);
    const double b = orc::compound_density(1.3, 0.9, tight);
    CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("monte-carlo chf")
{
    CHECK_THROWS_AS((void)orc::chf_by_monte_carlo({}, 1.0), std::domain_error);
    const std::vector<double> trivial{1.0, -2.0, 0.5};
    const auto at0 = orc::chf_by_monte_carlo(trivial, 0.0);
    CHECK(at0.estimate == 1.0);
    CHECK(at0.std_error == 0.0);

    const auto batch = kzero::sampling::sample_bessel(1.0, 1000000, 99);
    const auto est = orc::chf_by_monte_carlo(batch.values, 1.0);
    const double expected = 1.0 / std::sqrt(2.0);   // (1 + t^2)^{-1/2} at t = 1
    CHECK(std::abs(est.estimate - expected) < 3.0 * est.std_error);
    CHECK(std::abs(est.sin_estimate) < 3.0 * est.sin_std_error + 1e-12);
}
