#pragma once

// Real-argument Bessel functions of order 0 and 1.
//
// Production entry points dispatch between independently coded evaluation
// paths (see namespace `path`), each of which is usable on its own for
// cross-validation:
//
//   I0, I1   power series             z <= 25, asymptotic series above
//   K0, K1   power series             z <= 2,  trapezoidal cosh-integral on
//                                     (2, 25], asymptotic series above
//   J0..Y1   power series             z <= 5,  Miller backward recurrence
//                                     with Neumann sums on (5, 25], Hankel
//                                     asymptotic series above
//
// All functions are pure and thread-safe.

namespace rsheat::specfun {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;
/// Natural logarithm of 2.
inline constexpr double kLog2 = 0.69314718055994530941723212145817656808;
/// gamma - log 2, the constant offset in the small-argument expansion of K0.
inline constexpr double kGammaMinusLog2 = kEulerGamma - kLog2;

struct SpecfunResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

double bessel_i0(double z);
/// e^{-z} I0(z); finite for every z >= 0.
double bessel_i0_scaled(double z);
double bessel_i1(double z);
double bessel_i1_scaled(double z);

double bessel_k0(double z);
/// e^{z} K0(z).
double bessel_k0_scaled(double z);
double bessel_k1(double z);
double bessel_k1_scaled(double z);

/// K0(z) + log z - (log 2 - gamma), computed without cancellation for small z.
double k0_remainder(double z);

double bessel_j0(double z);
double bessel_j1(double z);
double bessel_y0(double z);
double bessel_y1(double z);

/// k-th positive zero of J0 (k >= 1).
double bessel_j0_zero(int k);
/// k-th positive zero of Y0 (k >= 1).
double bessel_y0_zero(int k);

// Variants that also report an error estimate. The modified functions are
// reported scaled so the estimate stays meaningful at large argument.
SpecfunResult bessel_i0_scaled_result(double z);
SpecfunResult bessel_i1_scaled_result(double z);
SpecfunResult bessel_k0_scaled_result(double z);
SpecfunResult bessel_k1_scaled_result(double z);
SpecfunResult bessel_j0_result(double z);
SpecfunResult bessel_j1_result(double z);
SpecfunResult bessel_y0_result(double z);
SpecfunResult bessel_y1_result(double z);

/// Individual evaluation paths. No dispatch, no domain checks beyond the
/// mathematical ones; each is accurate only on its own region.
namespace path {

SpecfunResult series_i0(double z);
SpecfunResult series_i1(double z);
SpecfunResult series_k0(double z);
SpecfunResult series_k1(double z);
SpecfunResult series_j0(double z);
SpecfunResult series_j1(double z);
SpecfunResult series_y0(double z);
SpecfunResult series_y1(double z);

// Scaled asymptotic expansions: e^{-z} I_n, e^{z} K_n.
SpecfunResult asymptotic_i0_scaled(double z);
SpecfunResult asymptotic_i1_scaled(double z);
SpecfunResult asymptotic_k0_scaled(double z);
SpecfunResult asymptotic_k1_scaled(double z);

// Hankel expansions.
SpecfunResult asymptotic_j0(double z);
SpecfunResult asymptotic_j1(double z);
SpecfunResult asymptotic_y0(double z);
SpecfunResult asymptotic_y1(double z);

/// e^{z} K_n(z) from the trapezoidal rule on int_0^inf exp(-z (cosh s - 1)) cosh(n s) ds.
SpecfunResult integral_k_scaled(int order, double z);

struct MillerValues {
    SpecfunResult j0, j1, y0, y1;
};
/// J0, J1, Y0, Y1 from normalized backward recurrence and Neumann series.
MillerValues miller(double z);

}  // namespace path

}  // namespace rsheat::specfun
