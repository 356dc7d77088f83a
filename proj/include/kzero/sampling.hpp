#pragma once

#include "kzero/dist.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kzero::sampling {

// xoshiro256++ seeded through splitmix64. The algorithm is part of the
// reproducibility contract: identical (seed, generator, spec, representation,
// n) gives bit-identical batches.
inline constexpr const char* kGeneratorId =
    "xoshiro256++/splitmix64;normal=erfinv;gamma=marsaglia-tsang";

class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next_u64();
    double next_uniform();       // (0, 1), 53-bit
    double next_normal();        // inverse-CDF, one uniform per draw
    double next_exponential();
    double next_gamma(double shape);   // scale 1; shape < 1 via the boost U^{1/a}

private:
    std::uint64_t s_[4];
};

enum class Representation {
    canonical,         // family default, used by draw()
    product,           // Bessel: sigma Z1 Z2
    chi_mixture,       // Bessel: sigma sqrt(S1) Z, S1 = Z'^2
    exp_difference,    // Laplace: s (W1 - W2)
    exp_mixture,       // Laplace: s sqrt(2 W) Z
    direct_sum,        // Laplace sum: add n_terms draws
    gamma_difference,  // Laplace sum: s (G1 - G2), G gamma(1, n_terms)
};

std::string representation_id(Representation r);

struct SampleBatch {
    std::vector<double> values;
    std::uint64_t seed;
    std::string generator_id;
    dist::DistributionSpec dist;
    Representation representation;
};

SampleBatch sample_bessel(double sigma, std::size_t n, std::uint64_t seed,
                          Representation rep = Representation::product);
SampleBatch sample_laplace(double s, std::size_t n, std::uint64_t seed,
                           Representation rep = Representation::exp_difference);
SampleBatch sample_gal(double sigma, double tau, std::size_t n, std::uint64_t seed);
SampleBatch sample_laplace_sum(int n_terms, double s, std::size_t n,
                               std::uint64_t seed,
                               Representation rep = Representation::direct_sum);
SampleBatch sample_martinmaas(double s, std::size_t n, std::uint64_t seed);
SampleBatch sample_normal(double sigma, std::size_t n, std::uint64_t seed);

// Dispatch on the spec with each family's default representation; an explicit
// representation overrides where the family has more than one.
SampleBatch sample(const dist::DistributionSpec& d, std::size_t n,
                   std::uint64_t seed,
                   Representation rep = Representation::canonical);

double ks_statistic_one_sample(std::vector<double> values,
                               const std::function<double(double)>& cdf);
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value c(alpha)/sqrt(n); c(0.01) = 1.6276.
double ks_critical(double alpha, std::size_t n);
double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m);

struct KsReport {
    double statistic;
    double critical;   // 1% level
    bool pass;
    std::size_t n;
};

KsReport verify_bessel_sum_is_laplace(double sigma, std::size_t n,
                                      std::uint64_t seed);

// Single-column CSV with '#' metadata header lines.
std::string batch_to_csv(const SampleBatch& batch);

} // namespace kzero::sampling
