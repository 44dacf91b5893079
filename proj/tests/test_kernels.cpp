#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "rsheat/errors.hpp"
#include "rsheat/kernels.hpp"
#include "rsheat/specfun.hpp"

using namespace rsheat;
using namespace rsheat::kernels;
using std::numbers::pi;

TEST_CASE("Friedrichs kernel values and symmetry") {
    CHECK(friedrichs_kernel(1, 1, 0.5) == doctest::Approx(1.266065877752008 * std::exp(-1.0)).epsilon(1e-14));
    for (double x : {0.01, 0.3, 2.0}) {
        for (double y : {0.05, 0.7}) {
            CHECK(friedrichs_kernel(x, y, 0.2) == doctest::Approx(friedrichs_kernel(y, x, 0.2)).epsilon(1e-15));
        }
    }
    // large x y / t must not overflow
    const double far = friedrichs_kernel(50, 50, 1e-3);
    CHECK(far == doctest::Approx(1 / std::sqrt(4 * pi * 1e-3)).epsilon(1e-4));
    CHECK(friedrichs_kernel(3, 1, 1e-3) == 0.0);
}

TEST_CASE("boundary kernel is the sqrt(x2) coefficient") {
    CHECK(nprime(1, 0.25) == doctest::Approx(2 * std::exp(-1.0)).epsilon(1e-15));
    const double x2 = 1e-10;
    for (double x : {0.1, 0.5, 1.0}) {
        CHECK(friedrichs_kernel(x, x2, 0.3) / std::sqrt(x2) == doctest::Approx(nprime(x, 0.3)).epsilon(1e-8));
    }
}

TEST_CASE("heat equation holds away from the boundary") {
    const double x = 0.7, y = 0.5, t = 0.1;
    auto e = [&](double xx, double tt) { return friedrichs_kernel(xx, y, tt); };
    auto residual = [&](double h) {
        const double dt = (e(x, t + h) - e(x, t - h)) / (2 * h);
        const double dxx = (e(x + h, t) - 2 * e(x, t) + e(x - h, t)) / (h * h);
        return dt - dxx - e(x, t) / (4 * x * x);
    };
    // central differences: the residual is pure O(h^2) truncation
    const double r1 = residual(2e-3), r2 = residual(1e-3);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(std::abs((4 * r2 - r1) / 3) < 1e-6);
}

TEST_CASE("semigroup property") {
    const double x = 0.4, y = 0.9, t = 0.07, s = 0.05;
    const double lhs = oracles::simpson(
        [&](double z) { return friedrichs_kernel(x, z, t) * friedrichs_kernel(z, y, s); }, 0, 6, 20000);
    CHECK(lhs == doctest::Approx(friedrichs_kernel(x, y, t + s)).epsilon(1e-9));
}

TEST_CASE("diagonal convolution") {
    for (double x : {0.05, 0.3, 1.0}) {
        for (double t : {0.01, 0.2, 1.0}) {
            CAPTURE(x);
            CAPTURE(t);
            const double q = q_diag(x, t);
            const double b = x * x / (2 * t);
            const double closed = x / (2 * t) * specfun::bessel_k0_scaled(b) * std::exp(-2 * b);
            CHECK(q == doctest::Approx(closed).epsilon(1e-10));
            const double brute =
                oracles::simpson([&](double s) { return s <= 0 || s >= t ? 0.0 : nprime(x, t - s) * nprime(x, s); },
                                 0, t, 200000);
            CHECK(q == doctest::Approx(brute).epsilon(1e-6));
        }
    }
}

TEST_CASE("diagonal convolution integrates to one half") {
    for (double t : {0.01, 0.5}) {
        const double total = oracles::midpoint([&](double x) { return q_diag(x, t); }, 0, 40 * std::sqrt(t), 20000);
        CHECK(total == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("signaling solution") {
    const BoundaryParam bp(0.0);
    auto one = [](double) { return 1.0; };
    const auto c = extract_coeffs([&](double x) { return signaling(one, x, 0.5); }, {}, bp);
    CHECK(std::abs(c.c_minus - 1) < 1e-3);

    // int_0^inf e^{-4t} F(1)(1, t) dt = -K0(2)/4
    const double lap = oracles::simpson(
        [&](double t) { return t <= 0 ? 0.0 : std::exp(-4 * t) * signaling(one, 1.0, t); }, 0, 12, 2400);
    CHECK(4 * lap == doctest::Approx(-0.1138938727495334).epsilon(1e-6));

    CHECK_THROWS_AS(signaling(one, 0.0, 0.5), DomainError);
}

TEST_CASE("boundary coefficient extraction") {
    const BoundaryParam bp(0.0);
    const auto exact = extract_coeffs([](double x) { return std::sqrt(x) * (2 + 3 * std::log(x)); }, {}, bp);
    CHECK(exact.c_plus == doctest::Approx(2).epsilon(1e-12));
    CHECK(exact.c_minus == doctest::Approx(3).epsilon(1e-12));
    CHECK(exact.fit_residual < 1e-12);
    CHECK(exact.boundary_value == doctest::Approx(2).epsilon(1e-12));
    CHECK(exact.boundary_value_at(pi / 2) == doctest::Approx(3).epsilon(1e-12));

    // Y0(2x) = (2/pi)(log x + gamma) + O(x^2 log x)
    const auto y = extract_coeffs([](double x) { return std::sqrt(x) * specfun::bessel_y0(2 * x); }, {}, bp);
    CHECK(std::abs(y.c_minus - 2 / pi) < 1e-3);
    CHECK(std::abs(y.c_plus - 2 * specfun::kEulerGamma / pi) < 1e-3);

    CHECK_THROWS_AS(extract_coeffs([](double x) { return x; }, {1e-3, 1e-3}, bp), FitError);
    CHECK_THROWS_AS(extract_coeffs([](double x) { return x; }, {1e-3, 0.5}, bp), DomainError);
    CHECK_THROWS_AS(extract_coeffs([](double x) { return x; }, {}, bp, 5), DomainError);
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(friedrichs_kernel(-1, 1, 1), DomainError);
    CHECK_THROWS_AS(nprime(1, 0), DomainError);
    CHECK_THROWS_AS(q_diag(1, -1), DomainError);
}
