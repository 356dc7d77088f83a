#ifndef KZERO_SPECFUN_HPP
#define KZERO_SPECFUN_HPP

// Real-valued special functions backing the distribution toolkit:
// modified Bessel K0/K1 (plus half-integer and small integer orders),
// modified Struve L0/L-1, the tail integral of K0, and erf/erfinv.
//
// All functions are pure and thread-safe. Domain violations throw
// std::domain_error; excessive orders throw std::range_error.

namespace kzero::specfun {

/// Accuracy targets used by the truncated series in this module.
struct EvalAccuracy {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
};

/// Modified Bessel function K0(x), x > 0.
/// Relative error <= 1e-10 on [1e-8, 700]; underflows to 0 for large x.
double bessel_k0(double x);

/// Modified Bessel function K1(x), x > 0.
double bessel_k1(double x);

/// Exponentially scaled variants e^x * K(x); valid for all x > 0.
double bessel_k0_scaled(double x);
double bessel_k1_scaled(double x);

/// K_{r+1/2}(x) via the finite elementary sum
///   sqrt(pi/(2x)) e^{-x} sum_{k=0}^{r} (r+k)!/((r-k)! k!) (2x)^{-k}.
/// r is capped at 20 (range_error beyond).
double bessel_k_half(int r, double x);

/// K_n(x) for integer n >= 0 via upward recurrence from K0, K1.
double bessel_k_int(int n, double x);

/// Modified Struve function L0(x), x >= 0, by power series.
/// Intended for x up to the k0_tail switch point.
double struve_l0(double x);

/// Modified Struve function L_{-1}(x), x >= 0, by power series.
double struve_l_minus1(double x);

/// Integral of K0 over [x, inf), x >= 0. k0_tail(0) = pi/2.
double k0_tail(double x);

/// Branch implementations of k0_tail, exposed for consistency testing.
/// The Struve branch is accurate for x <= ~13; the large-x branch for x >= 10.
double k0_tail_struve(double x);
double k0_tail_large(double x);

/// Switch point between the two k0_tail branches.
inline constexpr double k0_tail_switch = 12.0;

/// Error function; odd, |error| <= 1e-12 everywhere.
double erf(double x);

/// Complementary error function.
double erfc(double x);

/// Inverse error function on (-1, 1).
double erfinv(double p);

/// Test-only hook: multiplies bessel_k0 results by (1 + eps) to simulate
/// a corrupted build in the self-check suite. Not thread-safe; do not use
/// outside verification drivers.
void set_k0_perturbation(double eps);
double k0_perturbation();

} // namespace kzero::specfun

#endif
