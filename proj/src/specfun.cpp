#include "rsheat/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rsheat/errors.hpp"

namespace rsheat::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 1000;

// Crossovers between evaluation paths.
constexpr double kModifiedSeriesMax = 25.0;   // I_n
constexpr double kKSeriesMax = 2.0;           // K_n
constexpr double kKIntegralMax = 25.0;        // K_n
constexpr double kBesselSeriesMax = 5.0;      // J_n, Y_n
constexpr double kBesselMillerMax = 25.0;     // J_n, Y_n

void require_finite(double z, const char* fn) {
    if (!std::isfinite(z)) throw DomainError(std::string(fn) + ": non-finite argument");
}

void require_nonnegative(double z, const char* fn) {
    require_finite(z, fn);
    if (z < 0.0) throw DomainError(std::string(fn) + ": argument must be >= 0");
}

void require_positive(double z, const char* fn) {
    require_finite(z, fn);
    if (!(z > 0.0)) throw DomainError(std::string(fn) + ": argument must be > 0");
}

SpecfunResult scaled(SpecfunResult r, double factor) {
    return {r.value * factor, r.est_abs_error * std::abs(factor)};
}

// Sum over k of sign^k q^k / (k! (k+n)!) for n in {0, 1}, together with the
// companion sum weighted by c_k = H_k + H_{k+n} - 2 gamma (n = 1) or H_k (n = 0).
struct PowerSums {
    double plain = 0.0;
    double plain_abs = 0.0;
    double weighted = 0.0;
    double weighted_abs = 0.0;
};

PowerSums power_sums(double q, int order, double sign, bool with_weights) {
    PowerSums s;
    double term = 1.0;  // q^k / (k! (k+order)!) up to sign
    double harmonic = 0.0;           // H_k
    double harmonic_shift = order == 1 ? 1.0 : 0.0;  // H_{k+order}
    double sgn = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        if (k > 0) {
            term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
            harmonic += 1.0 / k;
            harmonic_shift += 1.0 / (k + order);
            sgn *= sign;
        }
        s.plain += sgn * term;
        s.plain_abs += term;
        if (with_weights) {
            const double c = order == 0 ? harmonic : harmonic + harmonic_shift - 2.0 * kEulerGamma;
            s.weighted += sgn * c * term;
            s.weighted_abs += std::abs(c) * term;
        }
        if (k > 0 && term < kEps * 1e-3 * s.plain_abs) break;
    }
    return s;
}

// Asymptotic series sum_k b_k with b_k = b_{k-1} * ratio(k), b_0 = 1; stops
// at machine precision or at the smallest term once the series diverges.
template <class Ratio>
SpecfunResult asymptotic_sum(Ratio ratio) {
    double sum = 1.0;
    double term = 1.0;
    double abs_sum = 1.0;
    for (int k = 1; k < kMaxTerms; ++k) {
        const double next = term * ratio(k);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(term) < kEps * std::abs(sum) * 1e-2) break;
    }
    return {sum, std::abs(term) + 4.0 * kEps * abs_sum};
}

struct HankelPQ {
    double p, q, err;
};

// Hankel P and Q for order with mu = 4 nu^2.
HankelPQ hankel_pq(double mu, double z) {
    double p = 1.0;
    double q = 0.0;
    double b = 1.0;  // a_m(nu) / z^m
    double last = 1.0;
    for (int m = 1; m < kMaxTerms; ++m) {
        const double odd = 2.0 * m - 1.0;
        const double next = b * (mu - odd * odd) / (8.0 * m * z);
        if (std::abs(next) >= std::abs(b) && m > 2) break;
        b = next;
        last = std::abs(b);
        // m = 1: +Q, m = 2: -P, m = 3: -Q, m = 4: +P, ...
        switch (m % 4) {
            case 0: p += b; break;
            case 1: q += b; break;
            case 2: p -= b; break;
            case 3: q -= b; break;
        }
        if (last < kEps * 1e-2) break;
    }
    return {p, q, last + 4.0 * kEps};
}

}  // namespace

namespace path {

SpecfunResult series_i0(double z) {
    const auto s = power_sums(0.25 * z * z, 0, 1.0, false);
    return {s.plain, 8.0 * kEps * s.plain_abs};
}

SpecfunResult series_i1(double z) {
    const auto s = power_sums(0.25 * z * z, 1, 1.0, false);
    return {0.5 * z * s.plain, 8.0 * kEps * 0.5 * z * s.plain_abs};
}

SpecfunResult series_j0(double z) {
    const auto s = power_sums(0.25 * z * z, 0, -1.0, false);
    return {s.plain, 8.0 * kEps * s.plain_abs};
}

SpecfunResult series_j1(double z) {
    const auto s = power_sums(0.25 * z * z, 1, -1.0, false);
    return {0.5 * z * s.plain, 8.0 * kEps * 0.5 * z * s.plain_abs};
}

SpecfunResult series_k0(double z) {
    const auto s = power_sums(0.25 * z * z, 0, 1.0, true);
    const double lead = std::log(0.5 * z) + kEulerGamma;
    // weighted includes the k = 0 term with H_0 = 0.
    const double value = -lead * s.plain + s.weighted;
    const double err = 8.0 * kEps * (std::abs(lead) * s.plain_abs + s.weighted_abs);
    return {value, err};
}

SpecfunResult series_k1(double z) {
    const auto s = power_sums(0.25 * z * z, 1, 1.0, true);
    const double i1 = 0.5 * z * s.plain;
    const double log_half = std::log(0.5 * z);
    const double value = 1.0 / z + log_half * i1 - 0.25 * z * s.weighted;
    const double err =
        8.0 * kEps * (1.0 / z + std::abs(log_half) * 0.5 * z * s.plain_abs + 0.25 * z * s.weighted_abs);
    return {value, err};
}

SpecfunResult series_y0(double z) {
    const auto s = power_sums(0.25 * z * z, 0, -1.0, true);
    const double lead = std::log(0.5 * z) + kEulerGamma;
    // sum (-1)^{k+1} H_k q^k/(k!)^2 = -weighted
    const double value = (2.0 / kPi) * (lead * s.plain - s.weighted);
    const double err = 8.0 * kEps * (2.0 / kPi) * (std::abs(lead) * s.plain_abs + s.weighted_abs);
    return {value, err};
}

SpecfunResult series_y1(double z) {
    const auto s = power_sums(0.25 * z * z, 1, -1.0, true);
    const double j1 = 0.5 * z * s.plain;
    const double log_half = std::log(0.5 * z);
    const double value = -2.0 / (kPi * z) + (2.0 / kPi) * log_half * j1 - z / (2.0 * kPi) * s.weighted;
    const double err = 8.0 * kEps *
                       (2.0 / (kPi * z) + (2.0 / kPi) * std::abs(log_half) * 0.5 * z * s.plain_abs +
                        z / (2.0 * kPi) * s.weighted_abs);
    return {value, err};
}

SpecfunResult asymptotic_i0_scaled(double z) {
    auto r = asymptotic_sum([z](int k) {
        const double odd = 2.0 * k - 1.0;
        return odd * odd / (8.0 * k * z);
    });
    return scaled(r, 1.0 / std::sqrt(2.0 * kPi * z));
}

SpecfunResult asymptotic_i1_scaled(double z) {
    auto r = asymptotic_sum([z](int k) {
        const double odd = 2.0 * k - 1.0;
        return (odd * odd - 4.0) / (8.0 * k * z);
    });
    return scaled(r, 1.0 / std::sqrt(2.0 * kPi * z));
}

SpecfunResult asymptotic_k0_scaled(double z) {
    auto r = asymptotic_sum([z](int k) {
        const double odd = 2.0 * k - 1.0;
        return -odd * odd / (8.0 * k * z);
    });
    return scaled(r, std::sqrt(kPi / (2.0 * z)));
}

SpecfunResult asymptotic_k1_scaled(double z) {
    auto r = asymptotic_sum([z](int k) {
        const double odd = 2.0 * k - 1.0;
        return (4.0 - odd * odd) / (8.0 * k * z);
    });
    return scaled(r, std::sqrt(kPi / (2.0 * z)));
}

SpecfunResult asymptotic_j0(double z) {
    const auto pq = hankel_pq(0.0, z);
    const double c = std::cos(z), s = std::sin(z);
    // chi = z - pi/4
    const double cos_chi = (c + s) / std::numbers::sqrt2;
    const double sin_chi = (s - c) / std::numbers::sqrt2;
    const double amp = std::sqrt(2.0 / (kPi * z));
    return {amp * (pq.p * cos_chi - pq.q * sin_chi), amp * (pq.err + 4.0 * kEps)};
}

SpecfunResult asymptotic_y0(double z) {
    const auto pq = hankel_pq(0.0, z);
    const double c = std::cos(z), s = std::sin(z);
    const double cos_chi = (c + s) / std::numbers::sqrt2;
    const double sin_chi = (s - c) / std::numbers::sqrt2;
    const double amp = std::sqrt(2.0 / (kPi * z));
    return {amp * (pq.p * sin_chi + pq.q * cos_chi), amp * (pq.err + 4.0 * kEps)};
}

SpecfunResult asymptotic_j1(double z) {
    const auto pq = hankel_pq(4.0, z);
    const double c = std::cos(z), s = std::sin(z);
    // chi = z - 3 pi/4
    const double cos_chi = (s - c) / std::numbers::sqrt2;
    const double sin_chi = -(s + c) / std::numbers::sqrt2;
    const double amp = std::sqrt(2.0 / (kPi * z));
    return {amp * (pq.p * cos_chi - pq.q * sin_chi), amp * (pq.err + 4.0 * kEps)};
}

SpecfunResult asymptotic_y1(double z) {
    const auto pq = hankel_pq(4.0, z);
    const double c = std::cos(z), s = std::sin(z);
    const double cos_chi = (s - c) / std::numbers::sqrt2;
    const double sin_chi = -(s + c) / std::numbers::sqrt2;
    const double amp = std::sqrt(2.0 / (kPi * z));
    return {amp * (pq.p * sin_chi + pq.q * cos_chi), amp * (pq.err + 4.0 * kEps)};
}

SpecfunResult integral_k_scaled(int order, double z) {
    // The integrand is analytic in the strip |Im s| < pi/2 and decays doubly
    // exponentially, so the trapezoidal error is of order exp(-2 pi d / h).
    constexpr double h = 0.1;
    auto f = [order, z](double s) {
        const double sh = std::sinh(0.5 * s);
        const double e = std::exp(-2.0 * z * sh * sh);
        return order == 0 ? e : e * std::cosh(s);
    };
    double sum = 0.5 * f(0.0);
    for (int m = 1; m < 100000; ++m) {
        const double v = f(m * h);
        sum += v;
        if (v < 1e-20 * sum) break;
    }
    const double value = h * sum;
    return {value, 16.0 * kEps * value};
}

MillerValues miller(double z) {
    int n_start = static_cast<int>(z + 12.0 * std::cbrt(z) + 30.0);
    n_start += n_start % 2;
    std::vector<double> j(static_cast<std::size_t>(n_start) + 2, 0.0);
    j[n_start + 1] = 0.0;
    j[n_start] = 1e-200;
    for (int n = n_start; n >= 1; --n) {
        j[n - 1] = (2.0 * n / z) * j[n] - j[n + 1];
        if (std::abs(j[n - 1]) > 1e200) {
            for (int m = n - 1; m <= n_start; ++m) j[m] *= 1e-200;
        }
    }
    double norm = j[0];
    for (int k = 2; k <= n_start; k += 2) norm += 2.0 * j[k];
    for (auto& v : j) v /= norm;

    const double lead = std::log(0.5 * z) + kEulerGamma;
    double y0_sum = 0.0;
    double y1_sum = 0.0;
    double sign = -1.0;
    for (int k = 1; 2 * k + 1 <= n_start + 1; ++k) {
        y0_sum += sign * j[2 * k] / k;
        y1_sum += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
        sign = -sign;
    }
    const double y0 = (2.0 / kPi) * (lead * j[0] - 2.0 * y0_sum);
    const double y1 = (2.0 / kPi) * (lead * j[1] + y1_sum) - 2.0 / (kPi * z) * j[0];
    const double err = 4.0 * kEps * std::sqrt(static_cast<double>(n_start)) * (1.0 + std::abs(lead));
    return {{j[0], err}, {j[1], err}, {y0, err}, {y1, err + 4.0 * kEps / z}};
}

}  // namespace path

SpecfunResult bessel_i0_scaled_result(double z) {
    require_nonnegative(z, "bessel_i0");
    if (z <= kModifiedSeriesMax) return scaled(path::series_i0(z), std::exp(-z));
    return path::asymptotic_i0_scaled(z);
}

SpecfunResult bessel_i1_scaled_result(double z) {
    require_nonnegative(z, "bessel_i1");
    if (z <= kModifiedSeriesMax) return scaled(path::series_i1(z), std::exp(-z));
    return path::asymptotic_i1_scaled(z);
}

SpecfunResult bessel_k0_scaled_result(double z) {
    require_positive(z, "bessel_k0");
    if (z <= kKSeriesMax) return scaled(path::series_k0(z), std::exp(z));
    if (z <= kKIntegralMax) return path::integral_k_scaled(0, z);
    return path::asymptotic_k0_scaled(z);
}

SpecfunResult bessel_k1_scaled_result(double z) {
    require_positive(z, "bessel_k1");
    if (z <= kKSeriesMax) return scaled(path::series_k1(z), std::exp(z));
    if (z <= kKIntegralMax) return path::integral_k_scaled(1, z);
    return path::asymptotic_k1_scaled(z);
}

SpecfunResult bessel_j0_result(double z) {
    require_nonnegative(z, "bessel_j0");
    if (z <= kBesselSeriesMax) return path::series_j0(z);
    if (z <= kBesselMillerMax) return path::miller(z).j0;
    return path::asymptotic_j0(z);
}

SpecfunResult bessel_j1_result(double z) {
    require_nonnegative(z, "bessel_j1");
    if (z <= kBesselSeriesMax) return path::series_j1(z);
    if (z <= kBesselMillerMax) return path::miller(z).j1;
    return path::asymptotic_j1(z);
}

SpecfunResult bessel_y0_result(double z) {
    require_positive(z, "bessel_y0");
    if (z <= kBesselSeriesMax) return path::series_y0(z);
    if (z <= kBesselMillerMax) return path::miller(z).y0;
    return path::asymptotic_y0(z);
}

SpecfunResult bessel_y1_result(double z) {
    require_positive(z, "bessel_y1");
    if (z <= kBesselSeriesMax) return path::series_y1(z);
    if (z <= kBesselMillerMax) return path::miller(z).y1;
    return path::asymptotic_y1(z);
}

double bessel_i0_scaled(double z) { return bessel_i0_scaled_result(z).value; }
double bessel_i1_scaled(double z) { return bessel_i1_scaled_result(z).value; }
double bessel_k0_scaled(double z) { return bessel_k0_scaled_result(z).value; }
double bessel_k1_scaled(double z) { return bessel_k1_scaled_result(z).value; }

double bessel_i0(double z) {
    require_nonnegative(z, "bessel_i0");
    if (z <= kModifiedSeriesMax) return path::series_i0(z).value;
    return path::asymptotic_i0_scaled(z).value * std::exp(z);
}

double bessel_i1(double z) {
    require_nonnegative(z, "bessel_i1");
    if (z <= kModifiedSeriesMax) return path::series_i1(z).value;
    return path::asymptotic_i1_scaled(z).value * std::exp(z);
}

double bessel_k0(double z) {
    require_positive(z, "bessel_k0");
    if (z <= kKSeriesMax) return path::series_k0(z).value;
    return bessel_k0_scaled(z) * std::exp(-z);
}

double bessel_k1(double z) {
    require_positive(z, "bessel_k1");
    if (z <= kKSeriesMax) return path::series_k1(z).value;
    return bessel_k1_scaled(z) * std::exp(-z);
}

double k0_remainder(double z) {
    require_positive(z, "k0_remainder");
    if (z > kKSeriesMax) return bessel_k0(z) + std::log(z) - kLog2 + kEulerGamma;
    // K0 = -(log(z/2) + gamma) I0 + S, so the remainder is
    // -(log(z/2) + gamma)(I0 - 1) + S with both pieces O(z^2 log z).
    const double q = 0.25 * z * z;
    const auto s = power_sums(q, 0, 1.0, true);
    const double lead = std::log(0.5 * z) + kEulerGamma;
    return -lead * (s.plain - 1.0) + s.weighted;
}

double bessel_j0(double z) { return bessel_j0_result(z).value; }
double bessel_j1(double z) { return bessel_j1_result(z).value; }
double bessel_y0(double z) { return bessel_y0_result(z).value; }
double bessel_y1(double z) { return bessel_y1_result(z).value; }

namespace {

template <class F, class DF>
double newton_polish(double x, F f, DF df) {
    for (int it = 0; it < 50; ++it) {
        const double step = f(x) / df(x);
        x -= step;
        if (std::abs(step) < 4.0 * kEps * x) break;
    }
    return x;
}

double mcmahon(double beta) {
    const double b8 = 8.0 * beta;
    return beta + 1.0 / b8 - 124.0 / (3.0 * b8 * b8 * b8);
}

}  // namespace

double bessel_j0_zero(int k) {
    if (k < 1) throw DomainError("bessel_j0_zero: index must be >= 1");
    const double guess = mcmahon((k - 0.25) * kPi);
    return newton_polish(guess, [](double x) { return bessel_j0(x); },
                         [](double x) { return -bessel_j1(x); });
}

double bessel_y0_zero(int k) {
    if (k < 1) throw DomainError("bessel_y0_zero: index must be >= 1");
    const double guess = k == 1 ? 0.8936 : mcmahon((k - 0.75) * kPi);
    return newton_polish(guess, [](double x) { return bessel_y0(x); },
                         [](double x) { return -bessel_y1(x); });
}

}  // namespace rsheat::specfun
