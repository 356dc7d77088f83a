#include "kzero/dist.hpp"
#include "kzero/specfun.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

namespace kzero::dist {

namespace sf = kzero::specfun;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950;
constexpr double kSqrt2 = 1.41421356237309504880168872420970;

bool is_half_integer_tau(double tau, int& twice)
{
    const double t2 = 2.0 * tau;
    const double r = std::round(t2);
    if (std::abs(t2 - r) > 1e-9 || r < 1.0) return false;
    twice = static_cast<int>(r);
    return true;
}

double gal_scale(const SymmetricGAL& g) { return g.sigma / kSqrt2; }

// Density of T = s(G1 - G2), G_i iid gamma(1, n):
//   f_T(x) = e^{-t} / (2 s (n-1)!) * sum_{k=0}^{n-1} c_k t^{n-1-k} 2^{-(n-1+k)},
//   c_k = (n-1+k)! / ((n-1-k)! k!),  t = |x|/s.
double laplace_sum_pdf(int n, double s, double x)
{
    const double t = std::abs(x) / s;
    if (t > 750.0) return 0.0;   // exp(-t) underflows before t^k overflows
    double c = 1.0;                       // c_0
    double p2 = std::pow(0.5, n - 1);     // 2^{-(n-1+k)}
    double sum = 0.0;
    for (int k = 0; k <= n - 1; ++k) {
        const int e = n - 1 - k;
        sum += c * p2 * (e == 0 ? 1.0 : std::pow(t, e));
        c *= static_cast<double>(n + k) * static_cast<double>(n - 1 - k) / (k + 1.0);
        p2 *= 0.5;
    }
    return std::exp(-t) * sum / (2.0 * s * std::tgamma(static_cast<double>(n)));
}

void check_probability(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("quantile: p must lie in (0,1)");
}

// Bracketed root finding on a monotone CDF: doubling bracket, bisection to
// an interval of width 1e-12, one secant refinement.
template <typename Cdf>
double invert_cdf(Cdf&& F, double p, double scale)
{
    if (p == 0.5) return 0.0;
    const bool upper = p > 0.5;
    const double target = upper ? p : 1.0 - p;   // solve on x >= 0 by symmetry
    auto G = [&](double x) { return upper ? F(x) : 1.0 - F(-x); };

    double lo = 0.0, hi = std::max(scale, 1e-8);
    for (int i = 0; i < 400 && G(hi) < target; ++i) hi *= 2.0;

    for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (G(mid) < target ? lo : hi) = mid;
    }
    // secant polish inside the final bracket
    const double flo = G(lo), fhi = G(hi);
    double x = (fhi > flo) ? lo + (target - flo) * (hi - lo) / (fhi - flo)
                           : 0.5 * (lo + hi);
    return upper ? x : -x;
}

} // namespace

ClassicalLaplace ClassicalLaplace::from_lambda(double lambda, double sigma_ref)
{
    if (!(lambda > 0.0) || !(sigma_ref > 0.0))
        throw std::domain_error("ClassicalLaplace: lambda and sigma_ref must be > 0");
    return ClassicalLaplace{0.0, sigma_ref / lambda, lambda};
}

void validate(const DistributionSpec& d)
{
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BesselK>) {
                if (!(v.sigma > 0.0)) throw std::domain_error("bessel: sigma must be > 0");
            } else if constexpr (std::is_same_v<T, ClassicalLaplace>) {
                if (!(v.s > 0.0)) throw std::domain_error("laplace: s must be > 0");
                if (v.lambda && !(*v.lambda > 0.0))
                    throw std::domain_error("laplace: lambda must be > 0");
            } else if constexpr (std::is_same_v<T, MartinMaas>) {
                if (!(v.s > 0.0)) throw std::domain_error("martinmaas: s must be > 0");
            } else if constexpr (std::is_same_v<T, SymmetricGAL>) {
                if (!(v.sigma > 0.0) || !(v.tau > 0.0))
                    throw std::domain_error("gal: sigma and tau must be > 0");
            } else if constexpr (std::is_same_v<T, LaplaceMean>) {
                if (v.n < 1) throw std::domain_error("laplacemean: n must be >= 1");
                if (v.n > 20) throw std::range_error("laplacemean: n capped at 20");
                if (!(v.s > 0.0)) throw std::domain_error("laplacemean: s must be > 0");
            } else {
                if (!(v.sigma > 0.0)) throw std::domain_error("normal: sigma must be > 0");
            }
        },
        d);
}

double laplace_sum_sf(int n, double s, double y)
{
    if (y < 0.0) throw std::domain_error("laplace_sum_sf: y must be >= 0");
    const double t = y / s;
    if (t > 750.0) return 0.0;
    // sum_{k} c_k 2^{-(n-1+k)} Gamma(n-k, t), with
    // Gamma(m, t) = (m-1)! e^{-t} sum_{j<m} t^j / j!.
    double c = 1.0;
    double p2 = std::pow(0.5, n - 1);
    double total = 0.0;
    for (int k = 0; k <= n - 1; ++k) {
        const int m = n - k;
        double fact = 1.0, tp = 1.0, inner = 1.0;   // j = 0 term
        for (int j = 1; j < m; ++j) {
            tp *= t / j;
            inner += tp;
            fact *= j;
        }
        total += c * p2 * fact * inner;
        c *= static_cast<double>(n + k) * static_cast<double>(n - 1 - k) / (k + 1.0);
        p2 *= 0.5;
    }
    return 0.5 * std::exp(-t) * total / std::tgamma(static_cast<double>(n));
}

double pdf(const DistributionSpec& d, double y)
{
    validate(d);
    return std::visit(
        [y](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BesselK>) {
                if (y == 0.0)
                    throw SingularityError("bessel pdf singular at y = 0");
                return sf::bessel_k0(std::abs(y) / v.sigma) / (kPi * v.sigma);
            } else if constexpr (std::is_same_v<T, ClassicalLaplace>) {
                return std::exp(-std::abs(y - v.theta) / v.s) / (2.0 * v.s);
            } else if constexpr (std::is_same_v<T, MartinMaas>) {
                if (y == 0.0)
                    throw SingularityError("martinmaas pdf singular at y = 0");
                return std::exp(-std::abs(y) / v.s) /
                       (2.0 * std::sqrt(kPi * v.s * std::abs(y)));
            } else if constexpr (std::is_same_v<T, SymmetricGAL>) {
                int twice = 0;
                if (!is_half_integer_tau(v.tau, twice))
                    throw UnsupportedError(
                        "gal pdf has a closed form only for half-integer tau; "
                        "use the quadrature oracle for other shapes");
                const double s = gal_scale(v);
                const double nu = v.tau - 0.5;     // Bessel order in the density
                const double t = std::abs(y) / s;
                if (t > 750.0) return 0.0;
                const double norm = std::tgamma(v.tau) * std::sqrt(kPi) * s;
                if (y == 0.0) {
                    if (twice == 1)
                        throw SingularityError("gal pdf singular at y = 0 for tau = 1/2");
                    return std::tgamma(nu) * 0.5 / norm;     // limit of (t/2)^nu K_nu(t)
                }
                double knu;
                if (twice % 2 == 0)                // tau integer -> half-integer order
                    knu = sf::bessel_k_half(twice / 2 - 1, t);
                else                               // tau = r + 1/2 -> integer order
                    knu = sf::bessel_k_int((twice - 1) / 2, t);
                return std::pow(0.5 * t, nu) * knu / norm;
            } else if constexpr (std::is_same_v<T, LaplaceMean>) {
                return v.n * laplace_sum_pdf(v.n, v.s, v.n * y);
            } else {
                const double z = y / v.sigma;
                return std::exp(-0.5 * z * z) / (v.sigma * std::sqrt(2.0 * kPi));
            }
        },
        d);
}

double cdf(const DistributionSpec& d, double y)
{
    validate(d);
    return std::visit(
        [y](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BesselK>) {
                const double tail = sf::k0_tail(std::abs(y) / v.sigma) / kPi;
                return y >= 0.0 ? 1.0 - tail : tail;
            } else if constexpr (std::is_same_v<T, ClassicalLaplace>) {
                const double z = (y - v.theta) / v.s;
                return z >= 0.0 ? 1.0 - 0.5 * std::exp(-z) : 0.5 * std::exp(z);
            } else if constexpr (std::is_same_v<T, MartinMaas>) {
                const double e = sf::erf(std::sqrt(std::abs(y) / v.s));
                return y >= 0.0 ? 0.5 * (1.0 + e) : 0.5 * (1.0 - e);
            } else if constexpr (std::is_same_v<T, SymmetricGAL>) {
                int twice = 0;
                if (!is_half_integer_tau(v.tau, twice))
                    throw UnsupportedError(
                        "gal cdf has a closed form only for half-integer tau");
                const double s = gal_scale(v);
                double tail;   // P(|U| > |y|) / 2 ... upper tail past |y|
                if (twice == 1) {
                    tail = sf::k0_tail(std::abs(y) / s) / kPi;
                } else if (twice % 2 == 0) {
                    tail = laplace_sum_sf(twice / 2, s, std::abs(y));
                } else {
                    // tau = r + 1/2: integrate (t/2)^r K_r term via
                    // J_r(x) = int_0^x t^r K_r dt = (2r-1) J_{r-1} - x^r K_{r-1},
                    // J_0 = pi/2 - k0_tail.
                    const int r = (twice - 1) / 2;
                    const double t = std::abs(y) / s;
                    if (t > 750.0) return y >= 0.0 ? 1.0 : 0.0;
                    double J = 0.5 * kPi - sf::k0_tail(t);
                    for (int m = 1; m <= r; ++m)
                        J = (2.0 * m - 1.0) * J -
                            (t > 0.0 ? std::pow(t, m) * sf::bessel_k_int(m - 1, t) : 0.0);
                    const double half_mass =
                        std::pow(0.5, r) * J / (std::tgamma(v.tau) * std::sqrt(kPi));
                    tail = 0.5 - half_mass;
                }
                return y >= 0.0 ? 1.0 - tail : tail;
            } else if constexpr (std::is_same_v<T, LaplaceMean>) {
                const double tail = laplace_sum_sf(v.n, v.s, v.n * std::abs(y));
                return y >= 0.0 ? 1.0 - tail : tail;
            } else {
                return 0.5 * (1.0 + sf::erf(y / (v.sigma * kSqrt2)));
            }
        },
        d);
}

double quantile(const DistributionSpec& d, double p)
{
    validate(d);
    check_probability(p);
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ClassicalLaplace>) {
                if (p == 0.5) return v.theta;
                return p > 0.5 ? v.theta - v.s * std::log(2.0 * (1.0 - p))
                               : v.theta + v.s * std::log(2.0 * p);
            } else if constexpr (std::is_same_v<T, MartinMaas>) {
                if (p == 0.5) return 0.0;
                const double w = sf::erfinv(std::abs(2.0 * p - 1.0));
                const double x = v.s * w * w;
                return p > 0.5 ? x : -x;
            } else if constexpr (std::is_same_v<T, ZeroMeanNormal>) {
                return v.sigma * kSqrt2 * sf::erfinv(2.0 * p - 1.0);
            } else {
                const DistributionSpec spec{v};
                const double sd = std::sqrt(moments(spec).variance);
                return invert_cdf([&](double x) { return cdf(spec, x); }, p, sd);
            }
        },
        d);
}

Moments moments(const DistributionSpec& d)
{
    validate(d);
    return std::visit(
        [](const auto& v) -> Moments {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BesselK>) {
                return {0.0, v.sigma * v.sigma};
            } else if constexpr (std::is_same_v<T, ClassicalLaplace>) {
                return {v.theta, 2.0 * v.s * v.s};
            } else if constexpr (std::is_same_v<T, MartinMaas>) {
                // |Y| ~ gamma(1/2, scale s), so E[Y^2] = (1/2)(3/2) s^2.
                return {0.0, 0.75 * v.s * v.s};
            } else if constexpr (std::is_same_v<T, SymmetricGAL>) {
                return {0.0, v.sigma * v.sigma * v.tau};
            } else if constexpr (std::is_same_v<T, LaplaceMean>) {
                return {0.0, 2.0 * v.s * v.s / v.n};
            } else {
                return {0.0, v.sigma * v.sigma};
            }
        },
        d);
}

double chf(const DistributionSpec& d, double t)
{
    validate(d);
    return std::visit(
        [t](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BesselK>) {
                // E[exp(it sigma Z1 Z2)] = E[exp(-(sigma t Z)^2 / 2)]
                //                        = (1 + sigma^2 t^2)^{-1/2}.
                return 1.0 / std::sqrt(1.0 + v.sigma * v.sigma * t * t);
            } else if constexpr (std::is_same_v<T, ClassicalLaplace>) {
                if (v.theta != 0.0)
                    throw UnsupportedError("chf implemented for theta = 0 only");
                return 1.0 / (1.0 + v.s * v.s * t * t);
            } else if constexpr (std::is_same_v<T, MartinMaas>) {
                throw UnsupportedError(
                    "martinmaas has no closed-form chf; use the Monte-Carlo oracle");
            } else if constexpr (std::is_same_v<T, SymmetricGAL>) {
                return std::pow(1.0 + 0.5 * v.sigma * v.sigma * t * t, -v.tau);
            } else if constexpr (std::is_same_v<T, LaplaceMean>) {
                const double q = v.s * t / v.n;
                return std::pow(1.0 + q * q, -static_cast<double>(v.n));
            } else {
                return std::exp(-0.5 * v.sigma * v.sigma * t * t);
            }
        },
        d);
}

double mgf(const DistributionSpec& d, double t)
{
    validate(d);
    return std::visit(
        [t](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BesselK>) {
                // Analytic continuation of the chf: (1 - sigma^2 t^2)^{-1/2}.
                if (!(std::abs(t) < 1.0 / v.sigma))
                    throw std::domain_error("bessel mgf defined for |t| < 1/sigma");
                return 1.0 / std::sqrt(1.0 - v.sigma * v.sigma * t * t);
            } else if constexpr (std::is_same_v<T, ClassicalLaplace>) {
                if (!(std::abs(t) < 1.0 / v.s))
                    throw std::domain_error("laplace mgf defined for |t| < 1/s");
                return std::exp(v.theta * t) / (1.0 - v.s * v.s * t * t);
            } else if constexpr (std::is_same_v<T, MartinMaas>) {
                if (!(std::abs(t) < 1.0 / v.s))
                    throw std::domain_error("martinmaas mgf defined for |t| < 1/s");
                return 0.5 / std::sqrt(v.s) *
                       (1.0 / std::sqrt(t + 1.0 / v.s) + 1.0 / std::sqrt(1.0 / v.s - t));
            } else if constexpr (std::is_same_v<T, SymmetricGAL>) {
                if (!(0.5 * v.sigma * v.sigma * t * t < 1.0))
                    throw std::domain_error("gal mgf defined for |t| < sqrt(2)/sigma");
                return std::pow(1.0 - 0.5 * v.sigma * v.sigma * t * t, -v.tau);
            } else if constexpr (std::is_same_v<T, LaplaceMean>) {
                const double q = v.s * t / v.n;
                if (!(std::abs(q) < 1.0))
                    throw std::domain_error("laplacemean mgf defined for |t| < n/s");
                return std::pow(1.0 - q * q, -static_cast<double>(v.n));
            } else {
                return std::exp(0.5 * v.sigma * v.sigma * t * t);
            }
        },
        d);
}

double bessel_absolute_moment(const BesselK& d, double mu)
{
    if (!(mu > 0.0))
        throw std::domain_error("bessel_absolute_moment: mu must be > 0");
    if (!(d.sigma > 0.0)) throw std::domain_error("bessel: sigma must be > 0");
    // E[|Y|^{mu-1}] = (2/pi) sigma^{mu-1} int_0^inf t^{mu-1} K0(t) dt
    //              = sigma^{mu-1} 2^{mu-1} Gamma(mu/2)^2 / pi.
    const double g = std::tgamma(0.5 * mu);
    return std::pow(d.sigma, mu - 1.0) * std::pow(2.0, mu - 1.0) * g * g / kPi;
}

namespace {

std::string fmt(double v)
{
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf - 1, v);
    return std::string(buf, res.ptr);
}

std::map<std::string, double, std::less<>> parse_kv(std::string_view body,
                                                    std::string_view family)
{
    std::map<std::string, double, std::less<>> kv;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const auto item = body.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw std::invalid_argument(
                "dist spec: expected key=value in '" + std::string(item) + "'");
        const std::string key(item.substr(0, eq));
        const std::string val(item.substr(eq + 1));
        double x = 0.0;
        auto res = std::from_chars(val.data(), val.data() + val.size(), x);
        if (res.ec != std::errc{} || res.ptr != val.data() + val.size())
            throw std::invalid_argument("dist spec: bad numeric value '" + val +
                                        "' for " + std::string(family));
        if (!kv.emplace(key, x).second)
            throw std::invalid_argument("dist spec: duplicate key '" + key + "'");
        body = (comma == std::string_view::npos) ? std::string_view{}
                                                 : body.substr(comma + 1);
    }
    return kv;
}

double take(std::map<std::string, double, std::less<>>& kv, std::string_view key)
{
    auto it = kv.find(key);
    if (it == kv.end())
        throw std::invalid_argument("dist spec: missing key '" + std::string(key) + "'");
    const double v = it->second;
    kv.erase(it);
    return v;
}

void expect_empty(const std::map<std::string, double, std::less<>>& kv)
{
    if (!kv.empty())
        throw std::invalid_argument("dist spec: unknown key '" + kv.begin()->first + "'");
}

} // namespace

DistributionSpec parse_spec(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument(
            "dist spec grammar: family:key=value[,key=value...] with families "
            "bessel, laplace, martinmaas, gal, laplacemean, normal");
    const std::string family(text.substr(0, colon));
    auto kv = parse_kv(text.substr(colon + 1), family);

    DistributionSpec spec;
    if (family == "bessel") {
        spec = BesselK{take(kv, "sigma")};
    } else if (family == "laplace") {
        if (kv.count("lambda")) {
            const double lambda = take(kv, "lambda");
            const double sigma_ref = kv.count("sigma_ref") ? take(kv, "sigma_ref") : 1.0;
            spec = ClassicalLaplace::from_lambda(lambda, sigma_ref);
        } else {
            ClassicalLaplace cl{0.0, take(kv, "s"), std::nullopt};
            if (kv.count("theta")) cl.theta = take(kv, "theta");
            spec = cl;
        }
    } else if (family == "martinmaas") {
        spec = MartinMaas{take(kv, "s")};
    } else if (family == "gal") {
        spec = SymmetricGAL{take(kv, "sigma"), take(kv, "tau")};
    } else if (family == "laplacemean") {
        const double n = take(kv, "n");
        if (n != std::floor(n))
            throw std::invalid_argument("dist spec: laplacemean n must be an integer");
        spec = LaplaceMean{static_cast<int>(n), take(kv, "s")};
    } else if (family == "normal") {
        spec = ZeroMeanNormal{take(kv, "sigma")};
    } else {
        throw std::invalid_argument("dist spec: unknown family '" + family +
                                    "' (expected bessel, laplace, martinmaas, gal, "
                                    "laplacemean, normal)");
    }
    expect_empty(kv);
    validate(spec);
    return spec;
}

std::string to_string(const DistributionSpec& d)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BesselK>) {
                return "bessel:sigma=" + fmt(v.sigma);
            } else if constexpr (std::is_same_v<T, ClassicalLaplace>) {
                if (v.lambda)
                    return "laplace:lambda=" + fmt(*v.lambda) +
                           ",sigma_ref=" + fmt(v.s * *v.lambda);
                std::string out = "laplace:s=" + fmt(v.s);
                if (v.theta != 0.0) out += ",theta=" + fmt(v.theta);
                return out;
            } else if constexpr (std::is_same_v<T, MartinMaas>) {
                return "martinmaas:s=" + fmt(v.s);
            } else if constexpr (std::is_same_v<T, SymmetricGAL>) {
                return "gal:sigma=" + fmt(v.sigma) + ",tau=" + fmt(v.tau);
            } else if constexpr (std::is_same_v<T, LaplaceMean>) {
                return "laplacemean:n=" + fmt(static_cast<double>(v.n)) +
                       ",s=" + fmt(v.s);
            } else {
                return "normal:sigma=" + fmt(v.sigma);
            }
        },
        d);
}

} // namespace kzero::dist
