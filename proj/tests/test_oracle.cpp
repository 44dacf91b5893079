#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "rsheat/errors.hpp"
#include "rsheat/oracle.hpp"
#include "rsheat/specfun.hpp"

using namespace rsheat;
using namespace rsheat::oracle;
using std::numbers::pi;

TEST_CASE("secular functions") {
    const BoundaryParam bp(3 * pi / 4);
    CHECK(secular_negative(3.0, bp) < 0);
    CHECK(secular_negative(3.2, bp) > 0);
    CHECK(secular_negative(1e-6, bp) == doctest::Approx(std::tan(3 * pi / 4)).epsilon(1e-9));
    CHECK(secular_positive(1e-12, bp) == doctest::Approx(2 * std::tan(3 * pi / 4)).epsilon(1e-9));
    const BoundaryParam zero(0.0);
    for (double mu = 1e-3; mu < 50; mu *= 1.5) CHECK(secular_negative(mu, zero) > 0);
    CHECK(secular_negative_scaled(40.0, bp) ==
          doctest::Approx(secular_negative(40.0, bp) * std::exp(-40.0)).epsilon(1e-12));
    for (double mu : {0.5, 2.0, 7.0}) {
        const double h = 1e-6 * mu;
        const double fd = (secular_negative(mu + h, bp) - secular_negative(mu - h, bp)) / (2 * h);
        CHECK(secular_negative_derivative(mu, bp) == doctest::Approx(fd).epsilon(1e-6));
    }
    for (double lambda : {3.0, 40.0, 400.0}) {
        const double h = 1e-6 * lambda;
        const double fd = (secular_positive(lambda + h, bp) - secular_positive(lambda - h, bp)) / (2 * h);
        CHECK(secular_positive_derivative(lambda, bp) == doctest::Approx(fd).epsilon(1e-5));
    }
    CHECK(secular_positive(5.0, BoundaryParam::friedrichs()) == specfun::bessel_j0(std::sqrt(5.0)));
    CHECK_THROWS_AS(secular_negative(1.0, BoundaryParam::friedrichs()), DomainError);
}

TEST_CASE("Friedrichs spectrum is the squared zeros of J0") {
    const double j2[] = {5.78318596294678452, 30.4712623436620864, 74.8870067906951834, 139.040284426459849,
                         222.932303617634157};
    const auto s = eigenvalues(BoundaryParam::friedrichs());
    REQUIRE(s.eigenvalues.size() >= 5);
    CHECK(s.negative_count == 0);
    for (int k = 0; k < 5; ++k) CHECK(s.eigenvalues[k] == doctest::Approx(j2[k]).epsilon(1e-13));
    // one eigenvalue per zero of J0 below the cutoff
    int expected = 0;
    while (std::pow(specfun::bessel_j0_zero(expected + 1), 2) <= s.lambda_max) ++expected;
    CHECK(static_cast<int>(s.eigenvalues.size()) == expected);
}

TEST_CASE("theta = 0 has a zero eigenvalue") {
    const auto s = eigenvalues(BoundaryParam(0.0));
    REQUIRE(s.eigenvalues.size() >= 2);
    CHECK(s.negative_count == 0);
    CHECK(s.eigenvalues[0] == 0.0);
    CHECK(s.eigenvalues[1] > 5.78318596294678452);
    CHECK(s.eigenvalues[1] == doctest::Approx(22.0104316602).epsilon(1e-10));
}

TEST_CASE("negative eigenvalue for theta in (pi/2, pi)") {
    const BoundaryParam bp(3 * pi / 4);
    const auto s = eigenvalues(bp);
    CHECK(s.negative_count == 1);
    CHECK(s.eigenvalues[0] == doctest::Approx(-9.19351243808).epsilon(1e-10));
    CHECK(s.eigenvalues[1] == doctest::Approx(17.2171106868).epsilon(1e-10));
    const auto b = bound_state(bp);
    REQUIRE(b.exists);
    CHECK(b.mu == doctest::Approx(3.03208054610711).epsilon(1e-13));
    CHECK(b.mu * b.mu == doctest::Approx(-s.eigenvalues[0]).epsilon(1e-13));
    CHECK(std::abs(b.mu - std::exp(-bp.kappa())) <= b.perturbation_bound);
    CHECK_FALSE(bound_state(BoundaryParam(0.0)).exists);
    CHECK_FALSE(bound_state(BoundaryParam(1.0)).exists);
}

TEST_CASE("spectra are sorted, certified and complete") {
    for (double theta : {0.0, 0.4, pi / 2, 2.0, 3.0}) {
        CAPTURE(theta);
        const BoundaryParam bp(theta);
        const auto s = eigenvalues(bp, 2000);
        REQUIRE(s.eigenvalues.size() == s.residuals.size());
        for (size_t i = 1; i < s.eigenvalues.size(); ++i) CHECK(s.eigenvalues[i] > s.eigenvalues[i - 1]);
        for (double r : s.residuals) CHECK(r < 1e-9);
        CHECK(s.eigenvalues.back() <= 2000);
        const int coarse = count_positive_roots(bp, 2000, 200);
        const int fine = count_positive_roots(bp, 2000, 2000);
        CHECK(coarse == fine);
        // Weyl law: about sqrt(lambda)/pi eigenvalues below lambda
        CHECK(std::abs(static_cast<double>(s.eigenvalues.size()) - std::sqrt(2000.0) / pi) <= 2);
    }
}

TEST_CASE("eigenvalues move continuously with theta") {
    const auto a = eigenvalues(BoundaryParam(1.0), 500);
    const auto b = eigenvalues(BoundaryParam(1.0 + 1e-6), 500);
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    for (size_t i = 0; i < a.eigenvalues.size(); ++i) CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-4);
}

TEST_CASE("spectral trace") {
    Spectrum one;
    one.eigenvalues = {1.0};
    one.residuals = {0.0};
    one.lambda_max = 3000;
    const auto v = oracle_trace(0.1, one);
    CHECK(v.value == doctest::Approx(std::exp(-0.1)).epsilon(1e-15));
    CHECK(v.tail_error == one.tail_bound(0.1));
    CHECK(v.tail_error < 1e-100);

    const auto s = eigenvalues(BoundaryParam(3 * pi / 4));
    CHECK(oracle_trace(2.0, s).value > oracle_trace(1.0, s).value);
    CHECK_THROWS_AS(oracle_trace(1e-3, s), InsufficientSpectrumError);
    CHECK_NOTHROW(oracle_trace(30.0 / s.lambda_max, s));
}

TEST_CASE("tail bound dominates the Friedrichs tail") {
    const auto full = eigenvalues(BoundaryParam::friedrichs(), 4000);
    Spectrum cut = eigenvalues(BoundaryParam::friedrichs(), 1000);
    const double t = 0.03;
    double tail = 0;
    for (double l : full.eigenvalues)
        if (l > 1000) tail += std::exp(-t * l);
    CHECK(tail <= cut.tail_bound(t));
    CHECK(cut.tail_bound(t) < 1e3 * tail);
}

TEST_CASE("CSV output") {
    const auto s = eigenvalues(BoundaryParam::friedrichs(), 100);
    std::ostringstream out;
    write_csv(out, s);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,lambda,secular_residual");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
        ++rows;
    }
    CHECK(rows == static_cast<int>(s.eigenvalues.size()));
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(eigenvalues(BoundaryParam(0.0), 50), DomainError);
    CHECK_THROWS_AS(eigenvalues(BoundaryParam(0.0), 4000, 1e-6), DomainError);
    CHECK_THROWS_AS(BoundaryParam{pi}, DomainError);
    CHECK_THROWS_AS(BoundaryParam{-0.1}, DomainError);
}
