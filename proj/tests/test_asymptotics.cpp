#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "rsheat/asymptotics.hpp"
#include "rsheat/errors.hpp"
#include "rsheat/trace.hpp"

using namespace rsheat;
using namespace rsheat::asymptotics;
using std::numbers::pi;

TEST_CASE("polynomial data is recovered exactly") {
    const auto ts = trace::log_grid(1e-4, 1e-2, 15);
    std::vector<double> v;
    for (double t : ts) v.push_back(0.25 - 3 * t + 40 * t * t);
    const auto fit = poly_fit(ts, v, 2);
    REQUIRE(fit.coefficients.size() == 3);
    CHECK(fit.coefficients[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fit.coefficients[1] == doctest::Approx(-3).epsilon(1e-9));
    CHECK(fit.coefficients[2] == doctest::Approx(40).epsilon(1e-6));
    CHECK(fit.max_residual < 1e-14);
    CHECK(fit.evaluate(5e-3) == doctest::Approx(0.25 - 0.015 + 0.001).epsilon(1e-13));
    CHECK(fit.subtracted_terms == "none");
    CHECK(fit.grid == ts);

    const auto flat = poly_fit(ts, std::vector<double>(ts.size(), 7.0), 2, "x");
    CHECK(flat.coefficients[0] == doctest::Approx(7.0).epsilon(1e-13));
    CHECK(std::abs(flat.coefficients[1]) < 1e-9);
    CHECK(flat.subtracted_terms == "x");
}

TEST_CASE("logarithmic data does not fit a polynomial") {
    const auto ts = trace::log_grid(1e-4, 1e-2, 15);
    std::vector<double> smooth, exotic;
    for (double t : ts) {
        smooth.push_back(1 + t);
        exotic.push_back(1 + t + 1 / std::log(t));
    }
    const double a = poly_fit(ts, smooth, 2).max_residual;
    const double b = poly_fit(ts, exotic, 2).max_residual;
    CHECK(b > 10 * std::max(a, 1e-12));
    CHECK(b > 1e-4);
}

TEST_CASE("fit arguments") {
    const std::vector<double> ts = {1e-3, 2e-3, 3e-3, 4e-3, 5e-3};
    const std::vector<double> v = {1, 2, 3, 4, 5};
    CHECK_THROWS_AS(poly_fit(ts, v, 3), DomainError);
    CHECK_THROWS_AS(poly_fit({1e-3, 1e-3, 2e-3, 3e-3, 4e-3}, v, 2), DomainError);
    CHECK_THROWS_AS(poly_fit({-1e-3, 1e-3, 2e-3, 3e-3, 4e-3}, v, 2), DomainError);
    CHECK_THROWS_AS(poly_fit(ts, {1, 2}, 2), DomainError);
    // distinct but indistinguishable once scaled
    const std::vector<double> close = {1.0, 1.0 + 1e-15, 1.0 + 2e-15, 1.0 + 3e-15, 1.0 + 4e-15};
    CHECK_THROWS_AS(poly_fit(close, v, 2), FitError);
}

TEST_CASE("exoticness report") {
    const auto grid = trace::log_grid(1e-4, 1e-2, 16);
    for (double theta : {0.0, pi / 4}) {
        CAPTURE(theta);
        const auto rep = exoticness_report(BoundaryParam(theta), grid);
        CHECK(rep.passed);
        CHECK(rep.residual_ratio >= 10);
        CHECK(rep.subtracted.max_residual <= 1e-4);
        CHECK(rep.difference.size() == grid.size());
        CHECK(rep.subtracted.subtracted_terms == "exotic+residue");

        // the second difference of the subtracted data in log t stays small
        for (size_t i = 1; i + 1 < grid.size(); ++i) {
            const double a = rep.difference[i - 1] - rep.exotic[i - 1] - rep.residue[i - 1];
            const double b = rep.difference[i] - rep.exotic[i] - rep.residue[i];
            const double c = rep.difference[i + 1] - rep.exotic[i + 1] - rep.residue[i + 1];
            CHECK(std::abs(a - 2 * b + c) < 1e-3);
        }

        std::ostringstream csv, text;
        write_report_csv(csv, rep);
        write_report_text(text, rep);
        CHECK(csv.str().rfind("t,theta,difference,", 0) == 0);
        CHECK(text.str().find("PASS") != std::string::npos);
    }
}

TEST_CASE("constant term is stable under grid refinement") {
    const BoundaryParam bp(1.0);
    const auto coarse = exoticness_report(bp, trace::log_grid(1e-4, 1e-2, 10));
    const auto fine = exoticness_report(bp, trace::log_grid(1e-4, 1e-2, 20));
    CHECK(std::abs(coarse.subtracted.coefficients[0] - fine.subtracted.coefficients[0]) < 1e-6);
}

TEST_CASE("report arguments") {
    const auto grid = trace::log_grid(1e-4, 1e-2, 8);
    CHECK_THROWS_AS(exoticness_report(BoundaryParam::friedrichs(), grid), DomainError);
    CHECK_THROWS_AS(exoticness_report(BoundaryParam(0.0), {1e-6, 1e-4, 1e-3, 1e-2, 2e-2}), DomainError);
    CHECK_THROWS_AS(exoticness_report(BoundaryParam(0.0), {1e-3, 1e-2, 0.5, 0.06, 0.07}), DomainError);
}
