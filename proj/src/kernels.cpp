#include "kzero/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace kzero::kernels {

namespace detail {

double sum_scalar(const double* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double sum_squares_scalar(const double* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_abs_scalar(const double* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
    return s;
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double center)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - center;
        s += d * d;
    }
    return s;
}

// defined in kernels_avx2.cpp, compiled with -mavx2
double sum_avx2(const double* x, std::size_t n);
double sum_squares_avx2(const double* x, std::size_t n);
double sum_abs_avx2(const double* x, std::size_t n);
double sum_sq_dev_avx2(const double* x, std::size_t n, double center);

} // namespace detail

namespace {

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend g_backend = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;

} // namespace

Backend active_backend() { return g_backend; }

std::string backend_name(Backend b)
{
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void set_backend(Backend b)
{
    if (b == Backend::avx2 && !cpu_has_avx2())
        throw std::runtime_error("kernels: avx2 not available on this cpu");
    g_backend = b;
}

void reset_backend() { g_backend = cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

double sum(const double* x, std::size_t n)
{
    return g_backend == Backend::avx2 ? detail::sum_avx2(x, n)
                                      : detail::sum_scalar(x, n);
}

double sum_squares(const double* x, std::size_t n)
{
    return g_backend == Backend::avx2 ? detail::sum_squares_avx2(x, n)
                                      : detail::sum_squares_scalar(x, n);
}

double sum_abs(const double* x, std::size_t n)
{
    return g_backend == Backend::avx2 ? detail::sum_abs_avx2(x, n)
                                      : detail::sum_abs_scalar(x, n);
}

double sum_sq_dev(const double* x, std::size_t n, double center)
{
    return g_backend == Backend::avx2 ? detail::sum_sq_dev_avx2(x, n, center)
                                      : detail::sum_sq_dev_scalar(x, n, center);
}

MeanVar mean_variance(const double* x, std::size_t n)
{
    if (n < 2) throw std::domain_error("mean_variance: need at least 2 values");
    const double m = sum(x, n) / n;
    return {m, sum_sq_dev(x, n, m) / (n - 1)};
}

} // namespace kzero::kernels
