#ifndef KZERO_DIST_HPP
#define KZERO_DIST_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

// Distribution families: the zero-order Bessel law K(sigma) with density
// K0(|y/sigma|)/(pi sigma), the classical (double-exponential) Laplace, the
// Martin-Maas inverse-square-root exponential law, the symmetric generalized
// Laplace (GAL), averages of iid Laplace variables, and the zero-mean normal.
//
// All families are symmetric about the origin (Laplace admits a location
// shift theta, zero in every internal use). Values are immutable; operations
// are pure and safe for concurrent evaluation.

namespace kzero::dist {

/// pdf evaluated at a non-integrable point (K(sigma) and Martin-Maas
/// densities diverge at y = 0).
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested closed form does not exist for these parameters.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BesselK {
    double sigma;
};

struct ClassicalLaplace {
    double theta = 0.0;
    double s;
    /// Optional ancillary reparameterization s = sigma_ref / lambda.
    std::optional<double> lambda;

    static ClassicalLaplace from_lambda(double lambda, double sigma_ref);
};

struct MartinMaas {
    double s;
};

struct SymmetricGAL {
    double sigma;
    double tau;
};

struct LaplaceMean {
    int n;
    double s;
};

struct ZeroMeanNormal {
    double sigma;
};

using DistributionSpec = std::variant<BesselK, ClassicalLaplace, MartinMaas,
                                      SymmetricGAL, LaplaceMean, ZeroMeanNormal>;

/// Validates parameter invariants; throws std::domain_error on violation.
void validate(const DistributionSpec& d);

double pdf(const DistributionSpec& d, double y);
double cdf(const DistributionSpec& d, double y);

/// Inverse CDF; |cdf(quantile(p)) - p| <= 1e-10. Closed-form inversion for
/// Laplace, Martin-Maas and normal; bracketed root finding otherwise.
double quantile(const DistributionSpec& d, double p);

struct Moments {
    double mean;
    double variance;
};
Moments moments(const DistributionSpec& d);

/// Characteristic function (real-valued for these symmetric laws).
/// Martin-Maas has no closed ch.f.; throws UnsupportedError.
double chf(const DistributionSpec& d, double t);

/// Moment generating function; throws std::domain_error (naming the bound)
/// outside the convergence strip.
double mgf(const DistributionSpec& d, double t);

/// E[|Y|^(mu-1)] for Y ~ K(sigma):  sigma^(mu-1) 2^(mu-1) Gamma(mu/2)^2 / pi.
double bessel_absolute_moment(const BesselK& d, double mu);

/// Flat spec grammar "family:key=value[,key=value...]", families
/// bessel, laplace, martinmaas, gal, laplacemean, normal.
DistributionSpec parse_spec(std::string_view text);
std::string to_string(const DistributionSpec& d);

/// Survival function P(T > y), y >= 0, of T = s (G1 - G2) with G1, G2 iid
/// gamma(rate 1, integer shape n): the sum of n iid Laplace(0, s) variables.
/// Shared by LaplaceMean and integer-shape GAL CDFs.
double laplace_sum_sf(int n, double s, double y);

} // namespace kzero::dist

#endif
