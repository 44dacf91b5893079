#pragma once

// Independent reference computations for the tests. Deliberately naive: plain
// Riemann sums and long-double series, sharing no code with the library.

#include <cmath>
#include <functional>

namespace oracles {

inline constexpr long double kGamma = 0.5772156649015328606065120900824024L;
inline constexpr long double kPiL = 3.1415926535897932384626433832795029L;

/// Composite midpoint rule with n cells.
inline double midpoint(const std::function<double(double)>& f, double a, double b, long n) {
    const long double h = (static_cast<long double>(b) - a) / n;
    long double s = 0.0L;
    for (long i = 0; i < n; ++i) s += f(static_cast<double>(a + (i + 0.5L) * h));
    return static_cast<double>(s * h);
}

/// Composite Simpson rule, n even.
inline double simpson(const std::function<double(double)>& f, double a, double b, long n) {
    const long double h = (static_cast<long double>(b) - a) / n;
    long double s = f(a) + f(b);
    for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(static_cast<double>(a + i * h));
    return static_cast<double>(s * h / 3.0L);
}

/// I0 and J0 from their power series in long double; fine for z <= 6.
inline double series_i0(double z) {
    const long double q = 0.25L * z * z;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return static_cast<double>(sum);
}

inline double series_j0(double z) {
    const long double q = -0.25L * z * z;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return static_cast<double>(sum);
}

/// K0 and Y0 from the logarithmic series; fine for z <= 4.
inline double series_k0(double z) {
    const long double q = 0.25L * z * z;
    long double term = 1.0L, harmonic = 0.0L, sum = 0.0L;
    const long double lead = -(std::log(0.5L * z) + kGamma);
    sum = lead;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        harmonic += 1.0L / k;
        sum += term * (lead + harmonic);
    }
    return static_cast<double>(sum);
}

inline double series_y0(double z) {
    const long double q = -0.25L * z * z;
    long double term = 1.0L, harmonic = 0.0L;
    const long double lead = std::log(0.5L * z) + kGamma;
    long double sum = lead;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        harmonic += 1.0L / k;
        sum += term * (lead - harmonic);
    }
    return static_cast<double>(2.0L / kPiL * sum);
}

}  // namespace oracles
