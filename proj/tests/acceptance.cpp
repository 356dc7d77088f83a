// Acceptance gate: one line per criterion, exit 0 only if every criterion
// passes. Each criterion is evaluated exactly as stated in the project
// requirements, with its tolerances pinned here.
#include "kzero/approx.hpp"
#include "kzero/checks.hpp"
#include "kzero/dist.hpp"
#include "kzero/kernels.hpp"
#include "kzero/oracle.hpp"
#include "kzero/sampling.hpp"
#include "kzero/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace kd = kzero::dist;
namespace ka = kzero::approx;
namespace ks = kzero::sampling;
namespace kc = kzero::checks;
namespace orc = kzero::oracle;
namespace sf = kzero::specfun;

namespace {

int g_pass = 0, g_fail = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail)
{
    std::printf("criterion %2d: %s  %s%s%s\n", id, pass ? "PASS" : "FAIL",
                name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    (pass ? g_pass : g_fail)++;
}

void note(const std::string& text) { std::printf("              note: %s\n", text.c_str()); }

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. Table 2 reproduction to +-0.01 per cell, +-1 percentage point.
void criterion1()
{
    const double values[5][9] = {
        {0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00},
        {0.22, 0.46, 0.32, 0.30, 0.25, 0.23, 0.11, 0.14, 0.17},
        {1.03, 1.61, 1.14, 1.05, 0.88, 0.80, 0.82, 0.99, 1.23},
        {1.60, 2.30, 1.63, 1.50, 1.26, 1.15, 1.35, 1.62, 2.03},
        {2.98, 3.91, 2.77, 2.54, 2.14, 1.96, 2.71, 3.25, 4.06}};
    const double devs[5][9] = {
        {0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 111, 49, 37, 15, 5, -48, -37, -21},
        {0, 56, 10, 1, -15, -22, -21, -5, 19},
        {0, 44, 2, -6, -21, -28, -15, 2, 27},
        {0, 31, -7, -15, -28, -34, -9, 9, 36}};
    const auto t = ka::default_quantile_table();
    bool ok = t.alphas.size() == 5 && t.columns.size() == 9;
    double worst_v = 0.0, worst_d = 0.0;
    for (int i = 0; i < 5 && ok; ++i)
        for (int j = 0; j < 9; ++j) {
            worst_v = std::max(worst_v, std::abs(t.values[i][j] - values[i][j]));
            worst_d =
                std::max(worst_d, std::abs(t.deviations_pct[i][j] - devs[i][j]));
        }
    ok = ok && worst_v < 0.01 && worst_d < 1.0;
    report(1, "quantile table reproduction (5x9 grid)", ok,
           "max |dvalue| = " + fmt(worst_v) + ", max |ddev| = " + fmt(worst_d) + " pp");
}

// 2. Lambda fits with distances and sigma invariance.
void criterion2()
{
    const auto fks = ka::fit_lambda(1.0, ka::Metric::ks);
    const auto fw = ka::fit_lambda(1.0, ka::Metric::wasserstein);
    bool ok = std::abs(fks.lambda_star - 1.83) < 0.01 &&
              std::abs(fks.distance_star - 0.0253) < 0.0005 &&
              std::abs(fw.lambda_star - 1.54) < 0.01 &&
              std::abs(fw.distance_star - 0.083) < 0.001;
    for (double sigma : {0.1, 10.0}) {
        const auto a = ka::fit_lambda(sigma, ka::Metric::ks);
        const auto b = ka::fit_lambda(sigma, ka::Metric::wasserstein);
        ok = ok && std::abs(a.lambda_star - fks.lambda_star) < 1e-3 &&
             std::abs(b.lambda_star - fw.lambda_star) < 1e-3 &&
             std::abs(b.distance_star / sigma - fw.distance_star) < 1e-3;
    }
    report(2, "lambda fits (ks and wasserstein, sigma invariant)", ok,
           "lambda_ks = " + fmt(fks.lambda_star) + " (D = " + fmt(fks.distance_star) +
               "), lambda_w = " + fmt(fw.lambda_star) + " (D = " +
               fmt(fw.distance_star) + ")");
}

// 3. Oracle parity across all families.
void criterion3()
{
    const auto results = kc::parity_suite();
    int bad = 0;
    for (const auto& r : results)
        if (!r.pass) ++bad;
    report(3, "oracle parity suite (pdf/cdf/moments, six families)", bad == 0,
           std::to_string(results.size() - bad) + "/" +
               std::to_string(results.size()) + " checks pass");
}

// 4. Struve-based CDF vs quadrature for |y| <= 12, branch agreement at switch.
void criterion4()
{
    orc::QuadratureConfig cfg;
    cfg.singularity_points = {0.0};
    const kd::DistributionSpec b = kd::BesselK{1.0};
    auto pdf = [&](double x) { return kd::pdf(b, x); };
    auto struve_cdf = [](double y) {
        const double tail = sf::k0_tail_struve(std::abs(y)) / 3.14159265358979323846;
        return y >= 0.0 ? 1.0 - tail : tail;
    };
    double worst = 0.0;
    for (double y = -12.0; y <= 12.0 + 1e-9; y += 1.5)
        worst = std::max(worst,
                         std::abs(struve_cdf(y) - orc::cdf_by_quadrature(pdf, y, cfg)));
    const double xs = sf::k0_tail_switch;
    const double rel =
        std::abs(sf::k0_tail_struve(xs) - sf::k0_tail_large(xs)) / sf::k0_tail_large(xs);
    const bool ok = worst < 1e-8 && rel < 1e-9;
    report(4, "Struve CDF identity and tail-branch agreement", ok,
           "max cdf diff = " + fmt(worst) + ", switch rel diff = " + fmt(rel));
}

// 5. Variances via quadrature (1e-5 rel) and mgf second difference (1e-6 rel),
//    against the stated targets sigma^2, 2s^2, 1.5 s^2, 2s^2/n.
void criterion5()
{
    struct Case {
        const char* name;
        kd::DistributionSpec d;
        double stated;
    };
    const std::vector<Case> cases{
        {"bessel", kd::BesselK{1.3}, 1.3 * 1.3},
        {"laplace", kd::ClassicalLaplace{0.0, 0.8, std::nullopt}, 2.0 * 0.64},
        {"martinmaas", kd::MartinMaas{1.1}, 1.5 * 1.21},
        {"laplacemean", kd::LaplaceMean{3, 0.9}, 2.0 * 0.81 / 3.0},
    };
    bool ok = true;
    std::ostringstream bad;
    orc::QuadratureConfig cfg;
    cfg.singularity_points = {0.0};
    for (const auto& c : cases) {
        auto pdf = [&](double x) { return kd::pdf(c.d, x); };
        const double quad = orc::moment_by_quadrature(pdf, 2, cfg);
        const double h = 1e-4;
        const double fd =
            (kd::mgf(c.d, h) - 2.0 * kd::mgf(c.d, 0.0) + kd::mgf(c.d, -h)) / (h * h);
        const bool this_ok = std::abs(quad - c.stated) / c.stated < 1e-5 &&
                             std::abs(fd - c.stated) / c.stated < 1e-6;
        if (!this_ok) {
            ok = false;
            bad << c.name << ": stated " << fmt(c.stated) << ", quadrature "
                << fmt(quad) << ", mgf " << fmt(fd) << "; ";
        }
    }
    report(5, "variances via quadrature and mgf differences", ok, bad.str());
    if (!ok)
        note("quadrature and the mgf route agree with each other at 0.75 s^2 for "
             "the Martin-Maas density; the stated 1.5 s^2 target matches neither "
             "(see decisions ledger)");
}

// 6. Sum of two Bessel draws vs Laplace(0, sigma/sqrt(2)) as stated, with the
//    stated wrong-scale control.
void criterion6()
{
    constexpr std::size_t n = 100000;
    bool ok = true;
    std::ostringstream detail;
    double corrected_stat = 0.0, corrected_crit = 0.0;
    for (double sigma : {1.0, 2.0}) {
        auto b1 = ks::sample_bessel(sigma, n, 2026);
        auto b2 = ks::sample_bessel(sigma, n, 2027);
        std::vector<double> sums(n);
        for (std::size_t i = 0; i < n; ++i) sums[i] = b1.values[i] + b2.values[i];
        const kd::DistributionSpec stated =
            kd::ClassicalLaplace{0.0, sigma / std::sqrt(2.0), std::nullopt};
        const kd::DistributionSpec control =
            kd::ClassicalLaplace{0.0, sigma, std::nullopt};
        const double crit = ks::ks_critical(0.01, n);
        const double d_stated = ks::ks_statistic_one_sample(
            sums, [&](double x) { return kd::cdf(stated, x); });
        const double d_control = ks::ks_statistic_one_sample(
            sums, [&](double x) { return kd::cdf(control, x); });
        // stated acceptance: scale sigma/sqrt(2) passes, the other scale fails
        ok = ok && d_stated < crit && d_control > crit;
        detail << "sigma=" << sigma << ": D(s/sqrt2) = " << fmt(d_stated)
               << ", D(s) = " << fmt(d_control) << ", crit = " << fmt(crit) << "; ";
        if (sigma == 1.0) {
            corrected_stat = d_control;
            corrected_crit = crit;
        }
    }
    report(6, "Bessel-sum distribution at the stated Laplace scale", ok,
           detail.str());
    if (!ok)
        note("the sum's chf is (1+sigma^2 t^2)^{-1}, the Laplace of scale sigma: "
             "that scale passes KS (D = " + fmt(corrected_stat) + " < " +
             fmt(corrected_crit) + ") and sigma/sqrt(2) is rejected (see ledger)");
}

// 7. Representation equivalences over 100 fixed seeds.
void criterion7()
{
    static constexpr std::size_t n = 100000;
    using Gen = std::function<std::vector<double>(std::uint64_t)>;
    struct Pair {
        const char* name;
        Gen a, b;
    };
    const std::vector<Pair> pairs{
        {"product/chi_mixture",
         [](std::uint64_t s) {
             return ks::sample_bessel(1.0, n, s, ks::Representation::product).values;
         },
         [](std::uint64_t s) {
             return ks::sample_bessel(1.0, n, s + 1000000,
                                      ks::Representation::chi_mixture)
                 .values;
         }},
        {"exp_difference/exp_mixture",
         [](std::uint64_t s) {
             return ks::sample_laplace(1.0, n, s, ks::Representation::exp_difference)
                 .values;
         },
         [](std::uint64_t s) {
             return ks::sample_laplace(1.0, n, s + 1000000,
                                       ks::Representation::exp_mixture)
                 .values;
         }},
        {"gal(tau=1/2)/bessel",
         [](std::uint64_t s) { return ks::sample_gal(std::sqrt(2.0), 0.5, n, s).values; },
         [](std::uint64_t s) { return ks::sample_bessel(1.0, n, s + 1000000).values; }},
        {"direct_sum/gamma_difference",
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
    bool ok = true;
    std::ostringstream detail;
    for (const auto& p : pairs) {
        int passes = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed)
            if (ks::ks_statistic_two_sample(p.a(seed), p.b(seed)) < crit) ++passes;
        ok = ok && passes >= 95;
        detail << p.name << " " << passes << "/100; ";
    }
    report(7, "representation equivalences (>=95/100 seeds)", ok, detail.str());
}

// 8. Table rows n=1..4 vs the general sum formula, each integrating to 1.
void criterion8()
{
    const double s = 0.8;
    auto u = [&](double y) { return std::abs(y) / s; };
    const std::vector<std::function<double(double)>> rows{
        [&](double y) { return std::exp(-u(y)) / (2 * s); },
        [&](double y) { return std::exp(-2 * u(y)) * (1 + 2 * u(y)) / (2 * s); },
        [&](double y) {
            const double t = u(y);
            return 9.0 / (16 * s) * std::exp(-3 * t) * (1 + 3 * t + 3 * t * t);
        },
        [&](double y) {
            const double t = u(y);
            return std::exp(-4 * t) * (15 + 60 * t + 96 * t * t + 64 * t * t * t) /
                   (24 * s);
        }};
    bool ok = true;
    double worst = 0.0, worst_norm = 0.0;
    orc::QuadratureConfig cfg;
    cfg.singularity_points = {0.0};
    for (int nn = 1; nn <= 4; ++nn) {
        const kd::DistributionSpec d = kd::LaplaceMean{nn, s};
        for (int i = 0; i <= 100; ++i) {
            const double y = -4.0 + 8.0 * i / 100;
            worst = std::max(worst, std::abs(kd::pdf(d, y) - rows[nn - 1](y)));
        }
        auto pdf = [&](double x) { return kd::pdf(d, x); };
        worst_norm = std::max(
            worst_norm, std::abs(orc::moment_by_quadrature(pdf, 0, cfg) - 1.0));
    }
    ok = worst < 1e-12 && worst_norm < 1e-8;
    report(8, "closed-form average densities n=1..4", ok,
           "max row diff = " + fmt(worst) + ", max |norm-1| = " + fmt(worst_norm));
}

// 9. Printed chf formula vs Monte-Carlo, and the squared-chf identity at the
//    stated sigma/sqrt(2) scale.
void criterion9()
{
    const auto batch = ks::sample_bessel(1.0, 1000000, 424242);
    bool mc_ok = true;
    std::ostringstream detail;
    for (double t : {0.5, 1.0, 2.0}) {
        const auto est = orc::chf_by_monte_carlo(batch.values, t);
        const double printed = 1.0 / std::sqrt(1.0 + 0.5 * t * t);
        const bool this_ok = std::abs(est.estimate - printed) < 3.0 * est.std_error;
        mc_ok = mc_ok && this_ok;
        detail << "t=" << t << ": mc " << fmt(est.estimate) << " vs printed "
               << fmt(printed) << " (se " << fmt(est.std_error) << "); ";
    }
    const kd::DistributionSpec b = kd::BesselK{1.0};
    const kd::DistributionSpec cl_half =
        kd::ClassicalLaplace{0.0, 1.0 / std::sqrt(2.0), std::nullopt};
    bool sq_ok = true;
    for (double t : {0.3, 1.0, 2.7}) {
        const double c = kd::chf(b, t);
        sq_ok = sq_ok && std::abs(c * c - kd::chf(cl_half, t)) < 1e-12;
    }
    report(9, "chf formula as printed vs Monte-Carlo; squared-chf identity",
           mc_ok && sq_ok, detail.str());
    if (!(mc_ok && sq_ok)) {
        const auto est = orc::chf_by_monte_carlo(batch.values, 1.0);
        note("Monte-Carlo agrees with (1+sigma^2 t^2)^{-1/2} instead (t=1: mc " +
             fmt(est.estimate) + " vs " + fmt(1.0 / std::sqrt(2.0)) +
             "), and chf^2 equals the Laplace chf at scale sigma, not "
             "sigma/sqrt(2) (see ledger)");
    }
}

// 10. Harder tails than the normal; exactly two positive pdf crossings.
void criterion10()
{
    const kd::DistributionSpec b = kd::BesselK{1.0};
    const kd::DistributionSpec nrm = kd::ZeroMeanNormal{1.0};
    bool ok = true;
    std::ostringstream detail;
    for (double y : {4.0, 5.0, 6.0}) {
        const double sb = 1.0 - kd::cdf(b, y);
        const double sn = 1.0 - kd::cdf(nrm, y);
        ok = ok && sb > sn;
        detail << "y=" << y << ": " << fmt(sb) << " > " << fmt(sn) << "; ";
    }
    const auto roots = ka::pdf_crossings(b, nrm, 0.0, 10.0);
    ok = ok && roots.size() == 2;
    detail << roots.size() << " crossings";
    report(10, "heavier tails than the normal; two pdf crossings", ok, detail.str());
}

// 11. Determinism and self-check sensitivity.
void criterion11()
{
    const auto a = ks::sample_bessel(1.0, 50000, 777);
    const auto b = ks::sample_bessel(1.0, 50000, 777);
    bool ok = a.values == b.values;

    const bool clean = kc::all_pass(kc::parity_suite()) &&
                       kc::all_pass(kc::representations_suite());
    sf::set_k0_perturbation(1e-3);
    const bool perturbed_caught = !kc::all_pass(kc::parity_suite());
    sf::set_k0_perturbation(0.0);
    ok = ok && clean && perturbed_caught;
    report(11, "bit determinism; check suite passes clean and catches 1e-3 K0 bias",
           ok,
           std::string("clean=") + (clean ? "pass" : "fail") + ", perturbed " +
               (perturbed_caught ? "caught" : "missed"));
}

} // namespace

int main()
{
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::printf("acceptance: %d/%d criteria pass\n", g_pass, g_pass + g_fail);
    return g_fail == 0 ? 0 : 1;
}
