#include <cstddef>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace kzero::kernels::detail {

double sum_scalar(const double* x, std::size_t n);
double sum_squares_scalar(const double* x, std::size_t n);
double sum_abs_scalar(const double* x, std::size_t n);
double sum_sq_dev_scalar(const double* x, std::size_t n, double center);

#if defined(__AVX2__)

namespace {

double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

double sum_avx2(const double* x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double sum_squares_avx2(const double* x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_abs_avx2(const double* x, std::size_t n)
{
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), mask));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] < 0.0 ? -x[i] : x[i];
    return s;
}

double sum_sq_dev_avx2(const double* x, std::size_t n, double center)
{
    const __m256d c = _mm256_set1_pd(center);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = x[i] - center;
        s += d * d;
    }
    return s;
}

#else

double sum_avx2(const double* x, std::size_t n) { return sum_scalar(x, n); }
double sum_squares_avx2(const double* x, std::size_t n)
{
    return sum_squares_scalar(x, n);
}
double sum_abs_avx2(const double* x, std::size_t n) { return sum_abs_scalar(x, n); }
double sum_sq_dev_avx2(const double* x, std::size_t n, double center)
{
    return sum_sq_dev_scalar(x, n, center);
}

#endif

} // namespace kzero::kernels::detail
