#pragma once

#include "kzero/dist.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace kzero::oracle {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    std::vector<double> singularity_points{};
};

class QuadratureFailure : public std::runtime_error {
public:
    QuadratureFailure(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate(estimate), error(error) {}
    double estimate;
    double error;
};

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7-15 on a finite interval.
double integrate(const Fn& f, double a, double b, const QuadratureConfig& cfg = {});

// [a, +inf) via x = a + u/(1-u^2), u in [0,1).
double integrate_half_line(const Fn& f, double a, const QuadratureConfig& cfg = {});

// Whole real line, split at cfg.singularity_points.
double integrate_real_line(const Fn& f, const QuadratureConfig& cfg = {});

// Density of Z = X*Y at z: int f_X(x) f_Y(z/x) dx/|x|.
double product_density(const Fn& f_x, const Fn& f_y, double z,
                       const QuadratureConfig& cfg = {});

// (1/(pi sigma)) int_0^inf exp(-y^2/(2x^2)) exp(-x^2/(2 sigma^2)) dx/x,
// evaluated with the substitution x = e^u.
double compound_density(double sigma, double y, const QuadratureConfig& cfg = {});

// Normal variance-mixture density: the families here are scale mixtures of a
// zero-mean normal with gamma-distributed variance, which gives an oracle pdf
// route that shares no code with the closed forms.
double mixture_pdf(const dist::DistributionSpec& d, double y,
                   const QuadratureConfig& cfg = {});

// int_{-inf}^{y} pdf, splitting at cfg.singularity_points.
double cdf_by_quadrature(const Fn& pdf, double y, const QuadratureConfig& cfg = {});

// int x^k pdf(x) dx over the real line.
double moment_by_quadrature(const Fn& pdf, int k, const QuadratureConfig& cfg = {});

struct McChf {
    double estimate;       // mean of cos(t x)
    double std_error;
    double sin_estimate;   // mean of sin(t x), zero-check for symmetric laws
    double sin_std_error;
};

McChf chf_by_monte_carlo(const std::vector<double>& values, double t);

} // namespace kzero::oracle
