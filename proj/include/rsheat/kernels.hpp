#pragma once

#include <functional>

#include "rsheat/boundary.hpp"
#include "rsheat/quadrature.hpp"

namespace rsheat::kernels {

/// Heat kernel of the Friedrichs extension on the half-line,
///   E+(x, x2, t) = sqrt(x x2)/(2t) I0(x x2/(2t)) exp(-(x^2 + x2^2)/(4t)),
/// evaluated through the scaled Bessel function so x x2/t may be large.
double friedrichs_kernel(double x, double x2, double t);

/// Boundary kernel N'E+(x, t) = sqrt(x)/(2t) exp(-x^2/(4t)), the coefficient
/// of sqrt(x2) in E+(x, x2, t) as x2 -> 0.
double nprime(double x, double t);

/// Diagonal time self-convolution Q(x, t) = int_0^t N'E+(x, t-s) N'E+(x, s) ds,
/// evaluated from the form (x/4t) int_0^1 exp(-(x^2/4t)/(u(1-u))) du/(u(1-u)).
double q_diag(double x, double t, const quad::QuadSpec& spec = {});

/// Signaling solution F(h)(x, t) = -int_0^t h(t-s) N'E+(x, s) ds; solves the
/// heat equation with zero initial data and c_-(F(h)(., t)) = h(t).
double signaling(const std::function<double(double)>& h, double x, double t, const quad::QuadSpec& spec = {});

struct Window {
    double lo = 1e-4;
    double hi = 1e-2;
};

struct BoundaryCoeffs {
    double c_plus = 0.0;
    double c_minus = 0.0;
    /// Max |f/sqrt(x) - (c_plus + c_minus log x)| over the sample grid.
    double fit_residual = 0.0;
    /// B_theta(f) for the parameter passed to extract_coeffs.
    double boundary_value = 0.0;

    double boundary_value_at(double theta) const;
};

/// Least-squares fit of f against {sqrt(x), sqrt(x) log x} on a log-spaced
/// grid in the window. Requires 0 < lo <= hi <= 0.05 and at least 20 points;
/// a degenerate window raises FitError.
BoundaryCoeffs extract_coeffs(const std::function<double(double)>& f, Window window, const BoundaryParam& bp,
                              int points = 32);

}  // namespace rsheat::kernels
