#pragma once

#include <string>
#include <vector>

#include "rsheat/boundary.hpp"
#include "rsheat/ktheta.hpp"
#include "rsheat/quadrature.hpp"

// Heat traces over (0, 1) of the half-line kernels.
//
//   Tr E_theta = Tr E+  +  int_0^t K_theta(t - s) TrQ(s) ds
//
// with TrQ(s) = int_0^1 Q(x, s) dx. The kernel is split as in ktheta, so the
// correction is T1 (from M) + T2 (from K1) + the bound-state piece.

namespace rsheat::trace {

/// int_0^1 E+(x, x, t) dx.
quad::QuadResult friedrichs_trace_result(double t, const quad::QuadSpec& spec = {});
double friedrichs_trace(double t, const quad::QuadSpec& spec = {});

/// TrQ(t) = (1/2) int_0^1 (1 - exp(-1/(4 t u (1 - u)))) du.
double tn_trace(double t, const quad::QuadSpec& spec = {});
/// d/dt TrQ(t) in closed form, -e^{-2a} K0(2a) / (4 t^2) with a = 1/(4t).
double tn_trace_derivative(double t);
/// The same trace from the x-integral of the diagonal convolution.
double tn_trace_from_qdiag(double t, const quad::QuadSpec& spec = {});

/// T1 = int_0^t M(t - s) TrQ(s) ds with the y-integral outermost.
quad::QuadResult t1_y_outer(double t, const BoundaryParam& bp, const quad::QuadSpec& spec = {});
/// T1 with the time integral outermost, r = t - s = t e^{-sigma}.
quad::QuadResult t1_s_outer(double t, const BoundaryParam& bp, const quad::QuadSpec& spec = {});
/// int_1^inf (1 - e^{-ty}) dy / (y ((log y + 2 kappa)^2 + pi^2)).
double t1_reference(double t, const BoundaryParam& bp, const quad::QuadSpec& spec = {});
/// -int_1^inf e^{-ty} dy / (y ((log y + 2 kappa)^2 + pi^2)).
double exotic_term(double t, const BoundaryParam& bp, const quad::QuadSpec& spec = {});

/// T2 = int_0^t K1(t - s) TrQ(s) ds.
quad::QuadResult t2(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts = {},
                    const quad::QuadSpec& spec = {});
/// int_0^t R(t - s) TrQ(s) ds; zero when the residue is switched off.
quad::QuadResult residue_trace(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts = {},
                               const quad::QuadSpec& spec = {});

struct CorrectionParts {
    double t1 = 0.0;
    double t2 = 0.0;
    double residue = 0.0;
    double total = 0.0;
    double est_error = 0.0;
};

/// T1 + T2 + residue trace. Friedrichs parameters raise DomainError.
CorrectionParts correction_parts(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts = {},
                                 const quad::QuadSpec& spec = {});
double correction_trace(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts = {},
                        const quad::QuadSpec& spec = {});

struct TraceParts {
    double friedrichs = 0.0;
    double correction = 0.0;
    double exotic_ref = 0.0;
};

struct TraceSample {
    double t = 0.0;
    double value = 0.0;
    double est_error = 0.0;
    TraceParts parts;
    /// Bound-state share of parts.correction.
    double residue_part = 0.0;
};

/// Tr E_theta on (0, 1). For the Friedrichs extension the correction and
/// exotic_ref are 0.
TraceSample full_trace(double t, const BoundaryParam& bp, const ktheta::KernelOptions& opts = {},
                       const quad::QuadSpec& spec = {});

/// full_trace over a grid, evaluated on `workers` threads (0 = hardware
/// concurrency). Output order follows `ts`.
std::vector<TraceSample> trace_curve(const std::vector<double>& ts, const BoundaryParam& bp,
                                     const ktheta::KernelOptions& opts = {}, const quad::QuadSpec& spec = {},
                                     unsigned workers = 0);

struct CurvePoint {
    TraceSample sample;
    /// False when a quadrature ran out of subdivisions; `error` holds the message.
    bool ok = true;
    std::string error;
};

/// Like trace_curve, but a ConvergenceError at one grid point marks that point
/// instead of aborting the curve. Other errors propagate.
std::vector<CurvePoint> trace_curve_collect(const std::vector<double>& ts, const BoundaryParam& bp,
                                            const ktheta::KernelOptions& opts = {},
                                            const quad::QuadSpec& spec = {}, unsigned workers = 0);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace rsheat::trace
