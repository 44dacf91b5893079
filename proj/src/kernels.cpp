#include "rsheat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lsq.hpp"
#include "rsheat/errors.hpp"
#include "rsheat/specfun.hpp"

namespace rsheat::kernels {

namespace {

constexpr double kCut = 46.0;

void require_time(double t, const char* fn) {
    if (!std::isfinite(t) || !(t > 0.0)) throw DomainError(std::string(fn) + ": t must be > 0");
}

void require_position(double x, const char* fn) {
    if (!std::isfinite(x) || x < 0.0) throw DomainError(std::string(fn) + ": x must be >= 0");
}

}  // namespace

double friedrichs_kernel(double x, double x2, double t) {
    require_time(t, "friedrichs_kernel");
    require_position(x, "friedrichs_kernel");
    require_position(x2, "friedrichs_kernel");
    if (x == 0.0 || x2 == 0.0) return 0.0;
    const double z = x * x2 / (2.0 * t);
    const double d = x - x2;
    return std::sqrt(x * x2) / (2.0 * t) * specfun::bessel_i0_scaled(z) * std::exp(-d * d / (4.0 * t));
}

double nprime(double x, double t) {
    require_time(t, "nprime");
    require_position(x, "nprime");
    return std::sqrt(x) / (2.0 * t) * std::exp(-x * x / (4.0 * t));
}

double q_diag(double x, double t, const quad::QuadSpec& spec) {
    require_time(t, "q_diag");
    require_position(x, "q_diag");
    if (x == 0.0) return 0.0;
    const double a = x * x / (4.0 * t);
    // Symmetric in u <-> 1-u; on (0, 1/2] put u = e^{-s}, so du/u = ds and the
    // 1/u endpoint behaviour becomes a bounded integrand in s.
    const double s_lo = std::log(2.0);
    const double s_hi = std::max(s_lo + 1.0, std::log(kCut / a) + 1.0);
    auto integrand = [a](double s) {
        const double u = std::exp(-s);
        const double w = 1.0 - u;
        return std::exp(-a / (u * w)) / w;
    };
    const auto r = quad::integrate(integrand, s_lo, s_hi, spec);
    return x / (4.0 * t) * 2.0 * r.value;
}

double signaling(const std::function<double(double)>& h, double x, double t, const quad::QuadSpec& spec) {
    require_time(t, "signaling");
    if (!std::isfinite(x) || !(x > 0.0)) throw DomainError("signaling: x must be > 0");
    // s = e^sigma; N'E+(x, s) ds = (sqrt(x)/2) exp(-x^2 e^{-sigma}/4) dsigma.
    const double sigma_hi = std::log(t);
    const double sigma_lo = std::log(x * x / (4.0 * kCut));
    if (sigma_lo >= sigma_hi) return 0.0;
    auto integrand = [&](double sigma) {
        const double s = std::exp(sigma);
        return h(t - s) * std::exp(-x * x / (4.0 * s));
    };
    const auto r = quad::integrate(integrand, sigma_lo, sigma_hi, spec);
    return -0.5 * std::sqrt(x) * r.value;
}

double BoundaryCoeffs::boundary_value_at(double theta) const {
    return std::cos(theta) * c_plus + std::sin(theta) * c_minus;
}

BoundaryCoeffs extract_coeffs(const std::function<double(double)>& f, Window window, const BoundaryParam& bp,
                              int points) {
    if (!(window.lo > 0.0) || !(window.hi <= 0.05) || window.lo > window.hi) {
        throw DomainError("extract_coeffs: window must satisfy 0 < lo <= hi <= 0.05");
    }
    if (points < 20) throw DomainError("extract_coeffs: at least 20 sample points required");

    std::vector<std::vector<double>> design;
    std::vector<double> rhs;
    const double log_lo = std::log(window.lo);
    const double log_hi = std::log(window.hi);
    for (int i = 0; i < points; ++i) {
        const double lx = log_lo + (log_hi - log_lo) * i / (points - 1);
        const double x = std::exp(lx);
        // f / sqrt(x) = c_+ + c_- log x + remainder
        design.push_back({1.0, lx});
        rhs.push_back(f(x) / std::sqrt(x));
    }
    const auto sol = detail::least_squares(design, rhs);

    BoundaryCoeffs out;
    out.c_plus = sol.coefficients[0];
    out.c_minus = sol.coefficients[1];
    for (double r : sol.residuals) out.fit_residual = std::max(out.fit_residual, std::abs(r));
    out.boundary_value = out.boundary_value_at(bp.theta());
    return out;
}

}  // namespace rsheat::kernels
