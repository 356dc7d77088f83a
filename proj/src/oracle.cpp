#include "kzero/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <variant>

namespace kzero::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950;

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Estimate {
    double value;
    double error;
};

Estimate gk15(const Fn& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double s = f(c - x) + f(c + x);
        resk += kWgk[j] * s;
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

struct Seg {
    double a, b, value, error;
    bool operator<(const Seg& o) const { return error < o.error; }
};

double adaptive(const Fn& f, std::vector<std::pair<double, double>> intervals,
                const QuadratureConfig& cfg)
{
    std::priority_queue<Seg> q;
    double total = 0.0, err = 0.0;
    for (auto [a, b] : intervals) {
        if (a == b) continue;
        auto e = gk15(f, a, b);
        q.push({a, b, e.value, e.error});
        total += e.value;
        err += e.error;
    }
    int splits = 0;
    while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)) && !q.empty()) {
        if (++splits > cfg.max_subdivisions)
            throw QuadratureFailure("quadrature: subdivision limit reached", total, err);
        const Seg s = q.top();
        q.pop();
        total -= s.value;
        err -= s.error;
        const double m = 0.5 * (s.a + s.b);
        if (m == s.a || m == s.b)
            throw QuadratureFailure("quadrature: interval too small", total, err);
        for (auto [a, b] : {std::pair{s.a, m}, std::pair{m, s.b}}) {
            auto e = gk15(f, a, b);
            q.push({a, b, e.value, e.error});
            total += e.value;
            err += e.error;
        }
    }
    return total;
}

// Breakpoints inside (a, b), sorted, deduplicated.
std::vector<double> inner_breaks(const QuadratureConfig& cfg, double a, double b)
{
    std::vector<double> pts;
    for (double s : cfg.singularity_points)
        if (s > a && s < b) pts.push_back(s);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<std::pair<double, double>> split(const QuadratureConfig& cfg, double a,
                                             double b)
{
    std::vector<std::pair<double, double>> out;
    double prev = a;
    for (double s : inner_breaks(cfg, a, b)) {
        out.emplace_back(prev, s);
        prev = s;
    }
    out.emplace_back(prev, b);
    return out;
}

// x = u / (1 - u^2) maps (-1, 1) onto the real line.
double map_x(double u) { return u / (1.0 - u * u); }
double map_dx(double u)
{
    const double d = 1.0 - u * u;
    return (1.0 + u * u) / (d * d);
}

double map_u(double x)   // inverse of map_x, needed to carry breakpoints over
{
    if (x == 0.0) return 0.0;
    return (std::sqrt(1.0 + 4.0 * x * x) - 1.0) / (2.0 * x);
}

} // namespace

double integrate(const Fn& f, double a, double b, const QuadratureConfig& cfg)
{
    return adaptive(f, split(cfg, a, b), cfg);
}

double integrate_half_line(const Fn& f, double a, const QuadratureConfig& cfg)
{
    auto g = [&](double u) { return f(a + map_x(u)) * map_dx(u); };
    QuadratureConfig mapped = cfg;
    mapped.singularity_points.clear();
    for (double s : cfg.singularity_points)
        if (s > a) mapped.singularity_points.push_back(map_u(s - a));
    return adaptive(g, split(mapped, 0.0, 1.0), mapped);
}

double integrate_real_line(const Fn& f, const QuadratureConfig& cfg)
{
    auto g = [&](double u) { return f(map_x(u)) * map_dx(u); };
    QuadratureConfig mapped = cfg;
    mapped.singularity_points.clear();
    for (double s : cfg.singularity_points)
        mapped.singularity_points.push_back(map_u(s));
    mapped.singularity_points.push_back(0.0);
    return adaptive(g, split(mapped, -1.0, 1.0), mapped);
}

double product_density(const Fn& f_x, const Fn& f_y, double z,
                       const QuadratureConfig& cfg)
{
    // Substitute x = e^u (and x = -e^u) to absorb the 1/|x| weight.
    auto pos = [&](double u) {
        const double x = std::exp(u);
        return f_x(x) * f_y(z / x);
    };
    auto neg = [&](double u) {
        const double x = -std::exp(u);
        return f_x(x) * f_y(z / x);
    };
    QuadratureConfig c = cfg;
    c.singularity_points.clear();
    return integrate_real_line(pos, c) + integrate_real_line(neg, c);
}

double compound_density(double sigma, double y, const QuadratureConfig& cfg)
{
    if (y == 0.0)
        throw dist::SingularityError("compound_density singular at y = 0");
    auto g = [&](double u) {   // x = e^u soaks up dx/x
        const double x = std::exp(u);
        return std::exp(-y * y / (2.0 * x * x) - x * x / (2.0 * sigma * sigma));
    };
    QuadratureConfig c = cfg;
    c.singularity_points.clear();
    return integrate_real_line(g, c) / (kPi * sigma);
}

double mixture_pdf(const dist::DistributionSpec& d, double y,
                   const QuadratureConfig& cfg)
{
    // Gamma-variance parameters (shape k, scale theta) with Y | W ~ N(0, W):
    // chf E[exp(-W t^2/2)] = (1 + theta t^2/2)^{-k} fixes each family.
    double shape = 0.0, scale = 0.0;
    if (auto* b = std::get_if<dist::BesselK>(&d)) {
        shape = 0.5;
        scale = 2.0 * b->sigma * b->sigma;
    } else if (auto* l = std::get_if<dist::ClassicalLaplace>(&d)) {
        if (l->theta != 0.0)
            throw dist::UnsupportedError("mixture_pdf: laplace theta must be 0");
        shape = 1.0;
        scale = 2.0 * l->s * l->s;
    } else if (auto* g = std::get_if<dist::SymmetricGAL>(&d)) {
        shape = g->tau;
        scale = g->sigma * g->sigma;
    } else if (auto* m = std::get_if<dist::LaplaceMean>(&d)) {
        shape = static_cast<double>(m->n);
        scale = 2.0 * m->s * m->s / (static_cast<double>(m->n) * m->n);
    } else {
        throw dist::UnsupportedError("mixture_pdf: family is not a gamma-variance mixture");
    }
    if (y == 0.0 && shape <= 0.5)
        throw dist::SingularityError("mixture_pdf singular at y = 0");
    const double lognorm =
        std::lgamma(shape) + shape * std::log(scale) + 0.5 * std::log(2.0 * kPi);
    auto g = [&](double u) {   // w = e^u; kept in log form so the tails underflow cleanly
        const double logpdf = -0.5 * y * y * std::exp(-u) - std::exp(u) / scale +
                              (shape - 0.5) * u - lognorm;
        return std::exp(logpdf);
    };
    QuadratureConfig c = cfg;
    c.singularity_points.clear();
    return integrate_real_line(g, c);
}

double cdf_by_quadrature(const Fn& pdf, double y, const QuadratureConfig& cfg)
{
    // Lower tail (-inf, c] through x = c - u/(1-u^2), then finite pieces up to y.
    std::vector<double> breaks;
    for (double s : cfg.singularity_points)
        if (s < y) breaks.push_back(s);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    const double c = breaks.empty() ? std::min(y, 0.0) : breaks.front();
    auto tail = [&](double u) { return pdf(c - map_x(u)) * map_dx(u); };
    QuadratureConfig plain = cfg;
    plain.singularity_points.clear();
    double total = adaptive(tail, {{0.0, 1.0}}, plain);

    double prev = c;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        total += adaptive(pdf, {{prev, breaks[i]}}, plain);
        prev = breaks[i];
    }
    if (y > prev) total += adaptive(pdf, {{prev, y}}, plain);
    return total;
}

double moment_by_quadrature(const Fn& pdf, int k, const QuadratureConfig& cfg)
{
    if (k < 0) throw std::domain_error("moment_by_quadrature: k must be >= 0");
    auto f = [&](double x) { return (k == 0 ? 1.0 : std::pow(x, k)) * pdf(x); };
    return integrate_real_line(f, cfg);
}

McChf chf_by_monte_carlo(const std::vector<double>& values, double t)
{
    if (values.empty())
        throw std::domain_error("chf_by_monte_carlo: empty sample");
    const double n = static_cast<double>(values.size());
    double sc = 0.0, sc2 = 0.0, ss = 0.0, ss2 = 0.0;
    for (double v : values) {
        const double c = std::cos(t * v), s = std::sin(t * v);
        sc += c;
        sc2 += c * c;
        ss += s;
        ss2 += s * s;
    }
    const double mc = sc / n, ms = ss / n;
    const double vc = std::max(0.0, sc2 / n - mc * mc);
    const double vs = std::max(0.0, ss2 / n - ms * ms);
    return {mc, std::sqrt(vc / n), ms, std::sqrt(vs / n)};
}

} // namespace kzero::oracle
