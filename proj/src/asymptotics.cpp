#include "rsheat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "lsq.hpp"
#include "rsheat/errors.hpp"
#include "rsheat/trace.hpp"

namespace rsheat::asymptotics {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double AsymptoticFit::evaluate(double t) const {
    double v = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * t + *it;
    return v;
}

AsymptoticFit poly_fit(const std::vector<double>& ts, const std::vector<double>& values, int degree,
                       const std::string& subtracted_terms) {
    if (degree < 0) throw DomainError("poly_fit: degree must be >= 0");
    if (ts.size() != values.size()) throw DomainError("poly_fit: t and value counts differ");
    if (ts.size() < static_cast<std::size_t>(degree) + 3) throw DomainError("poly_fit: need at least degree + 3 samples");
    for (double t : ts) {
        if (!std::isfinite(t) || !(t > 0.0)) throw DomainError("poly_fit: t values must be positive");
    }
    if (std::set<double>(ts.begin(), ts.end()).size() != ts.size()) throw DomainError("poly_fit: t values must be distinct");

    const double scale = *std::max_element(ts.begin(), ts.end());
    std::vector<std::vector<double>> design;
    for (double t : ts) {
        std::vector<double> row(static_cast<std::size_t>(degree) + 1);
        double p = 1.0;
        for (auto& r : row) {
            r = p;
            p *= t / scale;
        }
        design.push_back(std::move(row));
    }
    const auto sol = detail::least_squares(design, values);

    AsymptoticFit fit;
    fit.grid = ts;
    fit.subtracted_terms = subtracted_terms;
    fit.residuals = sol.residuals;
    double factor = 1.0;
    for (int j = 0; j <= degree; ++j) {
        fit.coefficients.push_back(sol.coefficients[j] / factor);
        fit.standard_errors.push_back(sol.standard_errors[j] / factor);
        factor *= scale;
    }
    for (double r : fit.residuals) fit.max_residual = std::max(fit.max_residual, std::abs(r));
    return fit;
}

ExoticnessReport exoticness_report(const BoundaryParam& bp, const std::vector<double>& t_grid,
                                   const ReportOptions& opts) {
    if (bp.is_friedrichs()) throw DomainError("exoticness_report: the Friedrichs extension has no exotic term");
    for (double t : t_grid) {
        if (!(t >= 1e-5 && t <= 1e-1)) throw DomainError("exoticness_report: grid must lie in [1e-5, 1e-1]");
    }

    ExoticnessReport rep;
    rep.theta = bp.theta();
    rep.ts = t_grid;
    rep.ratio_threshold = opts.ratio_threshold;
    rep.residual_limit = opts.residual_limit;

    const auto curve = trace::trace_curve(t_grid, bp, opts.kernel, opts.spec, opts.workers);
    const auto base = trace::trace_curve(t_grid, BoundaryParam::friedrichs(), opts.kernel, opts.spec, opts.workers);

    std::vector<double> minus_exotic, minus_both;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double d = curve[i].value - base[i].value;
        rep.difference.push_back(d);
        rep.exotic.push_back(curve[i].parts.exotic_ref);
        rep.residue.push_back(curve[i].residue_part);
        minus_exotic.push_back(d - curve[i].parts.exotic_ref);
        minus_both.push_back(d - curve[i].parts.exotic_ref - curve[i].residue_part);
    }
    rep.raw = poly_fit(t_grid, rep.difference, opts.degree, "none");
    rep.exotic_subtracted = poly_fit(t_grid, minus_exotic, opts.degree, "exotic");
    rep.subtracted = poly_fit(t_grid, minus_both, opts.degree, "exotic+residue");
    rep.residual_ratio = rep.subtracted.max_residual > 0.0 ? rep.raw.max_residual / rep.subtracted.max_residual
                                                           : INFINITY;
    rep.passed = rep.subtracted.max_residual <= rep.residual_limit && rep.residual_ratio >= rep.ratio_threshold;
    return rep;
}

void write_report_csv(std::ostream& out, const ExoticnessReport& r) {
    out << "t,theta,difference,exotic_term,residue_trace,raw_residual,exotic_subtracted_residual,"
           "subtracted_residual\n";
    for (std::size_t i = 0; i < r.ts.size(); ++i) {
        out << num(r.ts[i]) << ',' << num(r.theta) << ',' << num(r.difference[i]) << ',' << num(r.exotic[i]) << ','
            << num(r.residue[i]) << ',' << num(r.raw.residuals[i]) << ',' << num(r.exotic_subtracted.residuals[i])
            << ',' << num(r.subtracted.residuals[i]) << '\n';
    }
}

void write_report_text(std::ostream& out, const ExoticnessReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "exoticness report, theta = %.17g, %zu points in [%.3g, %.3g]\n", r.theta,
                  r.ts.size(), r.ts.empty() ? 0.0 : r.ts.front(), r.ts.empty() ? 0.0 : r.ts.back());
    out << buf;
    for (const auto* fit : {&r.raw, &r.exotic_subtracted, &r.subtracted}) {
        std::snprintf(buf, sizeof buf, "  fit (subtracted: %s): max residual %.6e\n", fit->subtracted_terms.c_str(),
                      fit->max_residual);
        out << buf;
        for (std::size_t j = 0; j < fit->coefficients.size(); ++j) {
            std::snprintf(buf, sizeof buf, "    a%zu = %.12e +- %.3e\n", j, fit->coefficients[j],
                          fit->standard_errors[j]);
            out << buf;
        }
    }
    std::snprintf(buf, sizeof buf, "  residual ratio %.4g (threshold %.4g), subtracted residual limit %.3g: %s\n",
                  r.residual_ratio, r.ratio_threshold, r.residual_limit, r.passed ? "PASS" : "FAIL");
    out << buf;
}

}  // namespace rsheat::asymptotics
