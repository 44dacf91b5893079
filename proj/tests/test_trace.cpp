#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "rsheat/errors.hpp"
#include "rsheat/oracle.hpp"
#include "rsheat/trace.hpp"

using namespace rsheat;
using namespace rsheat::trace;
using std::numbers::pi;

namespace {

double kernel_diag_oracle(double x, double t) {
    const double z = x * x / (2 * t);
    return x / (2 * t) * oracles::series_i0(z) * std::exp(-z);
}

// theta with kappa = 0
const double kThetaKappaZero = std::atan(0.69314718055994530942 - 0.57721566490153286061);

}  // namespace

TEST_CASE("Friedrichs trace against a direct sum") {
    for (double t : {0.05, 0.2}) {
        const double ref = oracles::simpson([&](double x) { return kernel_diag_oracle(x, t); }, 0, 1, 20000);
        CHECK(friedrichs_trace(t) == doctest::Approx(ref).epsilon(1e-10));
    }
    CHECK(friedrichs_trace(0.05) == doctest::Approx(1.2454800927394).epsilon(1e-12));
}

TEST_CASE("Friedrichs trace small-time behaviour") {
    CHECK(std::sqrt(4 * pi * 1e-4) * friedrichs_trace(1e-4) == doctest::Approx(1.0).epsilon(1e-4));
    double prev = INFINITY;
    for (double t = 1e-5; t < 1; t *= 2) {
        const double v = friedrichs_trace(t);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("boundary trace") {
    CHECK(std::abs(tn_trace(0.05) - 0.5) < std::exp(-20.0));
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
        const double v = tn_trace(t);
        CHECK(v >= 0);
        CHECK(v <= 0.5);
        CHECK(tn_trace_from_qdiag(t) == doctest::Approx(v).epsilon(1e-9));
        const double h = 1e-4 * t;
        const double fd = (tn_trace(t + h) - tn_trace(t - h)) / (2 * h);
        CHECK(tn_trace_derivative(t) == doctest::Approx(fd).epsilon(1e-6));
    }
    CHECK(tn_trace(1e4) < 1e-3);
}

TEST_CASE("both orderings of the main-part integral agree") {
    for (double theta : {0.0, 1.0, 2.8}) {
        const BoundaryParam bp(theta);
        for (double t : {1e-3, 0.05, 0.1, 0.5}) {
            CAPTURE(theta);
            CAPTURE(t);
            const auto y = t1_y_outer(t, bp);
            const auto s = t1_s_outer(t, bp);
            CHECK(std::abs(y.value - s.value) <= 1e-7);
            if (t <= 0.05) CHECK(std::abs(y.value - t1_reference(t, bp)) <= 1e-5);
        }
    }
}

TEST_CASE("exotic term") {
    const BoundaryParam zero(kThetaKappaZero);
    CHECK(std::abs(zero.kappa()) < 1e-15);
    const double t = 1e-8;
    const double ref = -oracles::simpson(
        [&](double u) { return std::exp(-t * std::exp(u)) / (u * u + pi * pi); }, 0, std::log(60 / t), 400000);
    CHECK(exotic_term(t, zero) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(exotic_term(1e-300, zero) == doctest::Approx(-0.5).epsilon(5e-3));

    const BoundaryParam bp(0.7);
    double prev = 0;
    for (double s = 1; s > 1e-12; s /= 10) {
        const double v = exotic_term(s, bp);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(exotic_term(100.0, bp) == 0.0);
}

TEST_CASE("full trace assembly") {
    const BoundaryParam bp(0.9);
    const auto s = full_trace(0.02, bp);
    CHECK(s.value == doctest::Approx(s.parts.friedrichs + s.parts.correction).epsilon(1e-15));
    const auto c = correction_parts(0.02, bp);
    CHECK(c.total == doctest::Approx(c.t1 + c.t2 + c.residue).epsilon(1e-15));
    CHECK(s.parts.correction == doctest::Approx(c.total).epsilon(1e-15));
    CHECK(s.residue_part == doctest::Approx(c.residue).epsilon(1e-15));
    CHECK(s.parts.exotic_ref == doctest::Approx(exotic_term(0.02, bp)).epsilon(1e-15));

    const auto f = full_trace(0.02, BoundaryParam::friedrichs());
    CHECK(f.parts.correction == 0.0);
    CHECK(f.parts.exotic_ref == 0.0);
    CHECK(f.value == friedrichs_trace(0.02));
    CHECK_THROWS_AS(correction_parts(0.02, BoundaryParam::friedrichs()), DomainError);
}

TEST_CASE("residue switch changes only the bound-state piece") {
    const BoundaryParam bp(0.0);
    ktheta::KernelOptions off;
    off.include_residue = false;
    const double t = 1e-3;
    const double diff = full_trace(t, bp).value - full_trace(t, bp, off).value;
    // roughly zeta0 t for small t since TrQ = 1/2
    CHECK(diff == doctest::Approx(bp.pole() * t).epsilon(0.01));
    CHECK(residue_trace(t, bp, off).value == 0.0);
}

TEST_CASE("correction vanishes towards the Friedrichs extension") {
    for (double eps : {0.1, 0.01, 0.001}) {
        const BoundaryParam bp(pi / 2 - eps);
        for (double t : {1e-3, 0.05, 0.1}) {
            CHECK(std::abs(correction_trace(t, bp)) <= 3 / std::abs(bp.kappa()));
        }
    }
    // on the other side the bound state sinks like -e^{-2 kappa}
    CHECK_THROWS_AS(correction_trace(0.1, BoundaryParam(pi / 2 + 0.001)), DomainError);
    const BoundaryParam below(pi / 2 + 0.5);
    CHECK(correction_trace(0.1, below) > 10);
}

TEST_CASE("differences between parameters match the spectral sums") {
    const double t = 0.05;
    const auto fr = oracle::eigenvalues(BoundaryParam::friedrichs());
    const double base_oracle = oracle::oracle_trace(t, fr).value;
    const double base = full_trace(t, BoundaryParam::friedrichs()).value;
    for (double theta : {0.0, 1.0, 3 * pi / 4}) {
        const BoundaryParam bp(theta);
        const double numeric = full_trace(t, bp).value - base;
        const double spectral = oracle::oracle_trace(t, oracle::eigenvalues(bp)).value - base_oracle;
        CHECK(numeric == doctest::Approx(spectral).epsilon(1e-6));
    }
}

TEST_CASE("curves are deterministic across worker counts") {
    const BoundaryParam bp(2.0);
    const auto ts = log_grid(1e-4, 1e-2, 12);
    REQUIRE(ts.size() == 12);
    CHECK(ts.front() == 1e-4);
    CHECK(ts.back() == doctest::Approx(1e-2).epsilon(1e-15));
    const auto one = trace_curve(ts, bp, {}, {}, 1);
    const auto four = trace_curve(ts, bp, {}, {}, 4);
    for (size_t i = 0; i < ts.size(); ++i) {
        CHECK(one[i].t == ts[i]);
        CHECK(one[i].value == four[i].value);
        CHECK(one[i].est_error == four[i].est_error);
    }
}

TEST_CASE("collected curves flag convergence failures") {
    quad::QuadSpec tight;
    tight.max_subdivisions = 1;
    tight.rel_tol = 1e-15;
    tight.abs_tol = 1e-300;
    const auto pts = trace_curve_collect({1e-3, 1e-2}, BoundaryParam(0.0), {}, tight, 2);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        CHECK_FALSE(p.ok);
        CHECK_FALSE(p.error.empty());
    }
    CHECK_THROWS_AS(trace_curve({1e-3}, BoundaryParam(0.0), {}, tight, 1), ConvergenceError);
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(friedrichs_trace(0.0), DomainError);
    CHECK_THROWS_AS(tn_trace(-1.0), DomainError);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), DomainError);
    CHECK_THROWS_AS(log_grid(1e-3, 1e-2, 0), DomainError);
}
