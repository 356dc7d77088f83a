#pragma once

#include "kzero/dist.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace kzero::approx {

enum class Metric { ks, wasserstein };

struct FitResult {
    double lambda_star;
    double distance_star;
    Metric metric;
    double sigma;
    int iterations;
    double bracket_lo;
    double bracket_hi;
};

class AmbiguityError : public std::runtime_error {
public:
    AmbiguityError(const std::string& what, std::vector<std::pair<double, double>> scan)
        : std::runtime_error(what), scan(std::move(scan)) {}
    std::vector<std::pair<double, double>> scan;   // (lambda, distance) dump
};

struct QuantileTable {
    std::vector<double> alphas;
    std::vector<dist::DistributionSpec> columns;
    std::vector<std::vector<double>> values;           // [alpha][column]
    std::vector<std::vector<double>> deviations_pct;   // vs reference column
    std::size_t reference;
};

double ks_distance(const dist::DistributionSpec& d1, const dist::DistributionSpec& d2);
double wasserstein_distance(const dist::DistributionSpec& d1,
                            const dist::DistributionSpec& d2);

FitResult fit_lambda(double sigma, Metric metric, double lo = 1.0, double hi = 2.5);

QuantileTable quantile_table(const std::vector<double>& alphas,
                             const std::vector<dist::DistributionSpec>& columns,
                             std::size_t reference = 0);
QuantileTable default_quantile_table();

std::string table_to_csv(const QuantileTable& t);
std::string table_to_json(const QuantileTable& t);

std::vector<double> pdf_crossings(const dist::DistributionSpec& d1,
                                  const dist::DistributionSpec& d2, double lo,
                                  double hi, std::size_t grid = 4000);

} // namespace kzero::approx
