#include "kzero/approx.hpp"
#include "kzero/oracle.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kzero::approx {

namespace {

constexpr double kGolden = 0.61803398874989484820458683436564;

double scale_of(const dist::DistributionSpec& d)
{
    return std::sqrt(dist::moments(d).variance);
}

template <typename F>
double golden_max(F&& f, double a, double b, double xtol)
{
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

template <typename F>
std::pair<double, int> golden_min(F&& f, double a, double b, double xtol)
{
    int evals = 2;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        ++evals;
        if (f1 > f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    return {0.5 * (a + b), evals};
}

std::string fmt_csv(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

} // namespace

double ks_distance(const dist::DistributionSpec& d1, const dist::DistributionSpec& d2)
{
    const double span = 12.0 * std::max(scale_of(d1), scale_of(d2));
    auto g = [&](double x) { return std::abs(dist::cdf(d1, x) - dist::cdf(d2, x)); };

    // All families here are symmetric about 0, so the sup lives on x >= 0.
    constexpr std::size_t kGrid = 2001;
    const double h = span / (kGrid - 1);
    std::vector<double> val(kGrid);
    for (std::size_t i = 0; i < kGrid; ++i) val[i] = g(i * h);

    double best = 0.0;
    for (std::size_t i = 0; i < kGrid; ++i) {
        const bool up = i == 0 || val[i] >= val[i - 1];
        const bool down = i + 1 == kGrid || val[i] >= val[i + 1];
        if (!(up && down)) continue;
        const double lo = i == 0 ? 0.0 : (i - 1) * h;
        const double hi = i + 1 == kGrid ? span : (i + 1) * h;
        best = std::max(best, g(golden_max(g, lo, hi, 1e-10)));
    }
    return best;
}

double wasserstein_distance(const dist::DistributionSpec& d1,
                            const dist::DistributionSpec& d2)
{
    const double cut = std::max(dist::quantile(d1, 1.0 - 1e-13),
                                dist::quantile(d2, 1.0 - 1e-13));
    auto g = [&](double x) { return std::abs(dist::cdf(d1, x) - dist::cdf(d2, x)); };
    oracle::QuadratureConfig cfg;
    cfg.abs_tol = 1e-10;
    cfg.rel_tol = 1e-9;
    return 2.0 * oracle::integrate(g, 0.0, cut, cfg);
}

FitResult fit_lambda(double sigma, Metric metric, double lo, double hi)
{
    if (!(sigma > 0.0)) throw std::domain_error("fit_lambda: sigma must be > 0");
    if (!(lo < hi)) throw std::domain_error("fit_lambda: bad bracket");
    const dist::DistributionSpec bessel = dist::BesselK{sigma};
    auto objective = [&](double lambda) {
        const dist::DistributionSpec cl =
            dist::ClassicalLaplace::from_lambda(lambda, sigma);
        return metric == Metric::ks ? ks_distance(bessel, cl)
                                    : wasserstein_distance(bessel, cl);
    };

    constexpr int kScan = 50;
    std::vector<std::pair<double, double>> scan(kScan);
    std::size_t kmin = 0;
    for (int i = 0; i < kScan; ++i) {
        const double l = lo + (hi - lo) * i / (kScan - 1);
        scan[i] = {l, objective(l)};
        if (scan[i].second < scan[kmin].second) kmin = i;
    }
    // unimodality check: no interior local minimum away from the global one
    for (std::size_t i = 1; i + 1 < scan.size(); ++i) {
        if (i == kmin) continue;
        if (scan[i].second + 1e-12 < scan[i - 1].second &&
            scan[i].second + 1e-12 < scan[i + 1].second)
            throw AmbiguityError("fit_lambda: objective not unimodal on bracket",
                                 std::move(scan));
    }
    if (kmin == 0 || kmin + 1 == scan.size())
        throw AmbiguityError("fit_lambda: minimum at bracket edge", std::move(scan));

    const double a = scan[kmin - 1].first, b = scan[kmin + 1].first;
    auto [lstar, evals] = golden_min(objective, a, b, 1e-5);
    return {lstar, objective(lstar), metric, sigma, kScan + evals + 1, lo, hi};
}

QuantileTable quantile_table(const std::vector<double>& alphas,
                             const std::vector<dist::DistributionSpec>& columns,
                             std::size_t reference)
{
    if (reference >= columns.size())
        throw std::domain_error("quantile_table: bad reference column");
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0))
            throw std::domain_error("quantile_table: alphas must be in (0,1)");

    QuantileTable t;
    t.alphas = alphas;
    t.columns = columns;
    t.reference = reference;
    t.values.assign(alphas.size(), std::vector<double>(columns.size()));
    t.deviations_pct.assign(alphas.size(), std::vector<double>(columns.size()));
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j)
            t.values[i][j] = dist::quantile(columns[j], 1.0 - alphas[i]);
        const double ref = t.values[i][reference];
        for (std::size_t j = 0; j < columns.size(); ++j)
            t.deviations_pct[i][j] =
                ref == 0.0 ? 0.0 : 100.0 * (t.values[i][j] / ref - 1.0);
    }
    return t;
}

QuantileTable default_quantile_table()
{
    const std::vector<double> alphas{0.5, 0.317, 0.1, 0.05, 0.01};
    std::vector<dist::DistributionSpec> cols;
    cols.push_back(dist::BesselK{1.0});
    for (double l : {1.0, std::sqrt(2.0), 1.54, 1.83, 2.0})
        cols.push_back(dist::ClassicalLaplace::from_lambda(l, 1.0));
    for (double s : {1.0, 1.2, 1.5}) cols.push_back(dist::MartinMaas{s});
    return quantile_table(alphas, cols, 0);
}

std::string table_to_csv(const QuantileTable& t)
{
    std::ostringstream out;
    out << "alpha";
    for (const auto& c : t.columns) out << "," << dist::to_string(c);
    for (const auto& c : t.columns) out << ",dev_pct(" << dist::to_string(c) << ")";
    out << "\n";
    for (std::size_t i = 0; i < t.alphas.size(); ++i) {
        out << fmt_csv(t.alphas[i]);
        for (double v : t.values[i]) out << "," << fmt_csv(v);
        for (double v : t.deviations_pct[i]) out << "," << fmt_csv(v);
        out << "\n";
    }
    return out.str();
}

std::string table_to_json(const QuantileTable& t)
{
    nlohmann::json j;
    j["alphas"] = t.alphas;
    auto& cols = j["columns"] = nlohmann::json::array();
    for (const auto& c : t.columns) cols.push_back(dist::to_string(c));
    j["values"] = t.values;
    j["deviations_pct"] = t.deviations_pct;
    j["reference"] = t.reference;
    return j.dump(2);
}

std::vector<double> pdf_crossings(const dist::DistributionSpec& d1,
                                  const dist::DistributionSpec& d2, double lo,
                                  double hi, std::size_t grid)
{
    auto diff = [&](double x) -> double {
        return dist::pdf(d1, x) - dist::pdf(d2, x);
    };
    auto safe = [&](double x, double& out) -> bool {
        try {
            out = diff(x);
            return true;
        } catch (const dist::SingularityError&) {
            return false;
        }
    };

    std::vector<double> roots;
    const double h = (hi - lo) / grid;
    double xprev = 0.0, fprev = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i <= grid; ++i) {
        const double x = lo + i * h;
        double fx;
        if (!safe(x, fx)) continue;
        if (have_prev && fprev * fx < 0.0) {
            double a = xprev, b = x, fa = fprev;
            while (b - a > 1e-10) {
                const double m = 0.5 * (a + b);
                double fm;
                if (!safe(m, fm)) break;
                if (fa * fm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xprev = x;
        fprev = fx;
        have_prev = true;
    }
    return roots;
}

} // namespace kzero::approx
