#pragma once

#include <cstddef>
#include <string>

namespace kzero::kernels {

// Batch reductions over sample arrays. Scalar reference implementations plus
// an AVX2 variant picked at runtime; the two are equivalence-tested. The
// special-function evaluators stay scalar: they are branch- and
// polynomial-heavy and never the hot path here.

enum class Backend { scalar, avx2 };

Backend active_backend();
std::string backend_name(Backend b);
// Force a backend (tests use this to compare variants). Requesting avx2 on a
// machine without it is an error.
void set_backend(Backend b);
void reset_backend();   // back to runtime detection

double sum(const double* x, std::size_t n);
double sum_squares(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double sum_sq_dev(const double* x, std::size_t n, double center);

struct MeanVar {
    double mean;
    double variance;   // unbiased
};

MeanVar mean_variance(const double* x, std::size_t n);

} // namespace kzero::kernels
