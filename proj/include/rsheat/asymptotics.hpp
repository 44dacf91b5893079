#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rsheat/boundary.hpp"
#include "rsheat/ktheta.hpp"
#include "rsheat/quadrature.hpp"

namespace rsheat::asymptotics {

struct AsymptoticFit {
    /// a_0 .. a_d in the unscaled variable t.
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    /// data - model on each grid point.
    std::vector<double> residuals;
    double max_residual = 0.0;
    std::vector<double> grid;
    /// What was subtracted from the data before fitting, e.g. "none",
    /// "exotic", "exotic+residue".
    std::string subtracted_terms = "none";

    double evaluate(double t) const;
};

/// Least-squares polynomial of the given degree, fitted in t / max(t) for
/// conditioning. Needs at least degree + 3 distinct positive t values.
AsymptoticFit poly_fit(const std::vector<double>& ts, const std::vector<double>& values, int degree,
                       const std::string& subtracted_terms = "none");

struct ReportOptions {
    ktheta::KernelOptions kernel{};
    quad::QuadSpec spec{};
    int degree = 2;
    /// Pass requires raw / subtracted residual >= ratio_threshold ...
    double ratio_threshold = 10.0;
    /// ... and subtracted residual <= residual_limit.
    double residual_limit = 1e-4;
    unsigned workers = 0;
};

struct ExoticnessReport {
    double theta = 0.0;
    std::vector<double> ts;
    /// D(t) = Tr E_theta - Tr E_{pi/2}.
    std::vector<double> difference;
    std::vector<double> exotic;
    std::vector<double> residue;
    AsymptoticFit raw;
    AsymptoticFit exotic_subtracted;
    AsymptoticFit subtracted;
    double residual_ratio = 0.0;
    double ratio_threshold = 10.0;
    double residual_limit = 1e-4;
    bool passed = false;
};

/// Fits D, D - exotic and D - exotic - residue trace. Rejects the Friedrichs
/// extension and grids outside [1e-5, 1e-1].
ExoticnessReport exoticness_report(const BoundaryParam& bp, const std::vector<double>& t_grid,
                                   const ReportOptions& opts = {});

void write_report_csv(std::ostream& out, const ExoticnessReport& report);
void write_report_text(std::ostream& out, const ExoticnessReport& report);

}  // namespace rsheat::asymptotics
